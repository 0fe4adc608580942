import time

import pytest

import usageclusters as uc
from usageclusters.tools.optional_imports import import_optional_dependency, require_joblib
from usageclusters.tools.progress import resolve_progress_bar
from usageclusters.tools.timer import Timer, timer_summary


def test_timer_context_manager():
    timer = Timer()
    assert timer.nb_timings == 0
    with timer:
        time.sleep(0.001)
    with timer:
        pass
    assert timer.nb_timings == 2
    assert timer.total >= 0.001
    assert timer.mean == pytest.approx(timer.total/2)


def test_timer_recursive_function():
    timer = Timer()

    @timer.wraps_function
    def countdown(n):
        return 0 if n == 0 else countdown(n - 1) + 1

    assert countdown(3) == 3
    assert timer.nb_timings == 4
    assert timer.timings[-1] == max(timer.timings)


def test_timer_summary():
    summary = timer_summary({"A": Timer([1.0, 2.0]), "B": Timer()})
    assert list(summary.index) == ["A", "B"]
    assert summary.loc["A", "total"] == 3.0
    assert summary.loc["A", "mean"] == 1.5
    assert summary.loc["B", "nb_calls"] == 0


@pytest.mark.parametrize("value, expected", [("True", True), ("1", True), ("f", False), ("FALSE", False)])
def test_progress_bar_variable(monkeypatch, value, expected):
    monkeypatch.setenv("USAGECLUSTERS_PROGRESS_BAR", value)
    assert resolve_progress_bar() is expected
    assert resolve_progress_bar(not expected) is (not expected)


def test_progress_bar_default(monkeypatch):
    monkeypatch.delenv("USAGECLUSTERS_PROGRESS_BAR", raising=False)
    assert resolve_progress_bar(default=False) is False
    assert resolve_progress_bar() is True


def test_invalid_progress_bar_variable(monkeypatch):
    monkeypatch.setenv("USAGECLUSTERS_PROGRESS_BAR", "sometimes")
    with pytest.raises(ValueError):
        resolve_progress_bar()


def test_missing_optional_dependency():
    with pytest.raises(ImportError, match="pip install no-such-package"):
        import_optional_dependency("no_such_module", "no-such-package")


def test_require_joblib(monkeypatch):
    import usageclusters.tools.optional_imports
    monkeypatch.setattr(usageclusters.tools.optional_imports, "silently_import_optional_dependency", lambda name: None)
    with pytest.raises(ImportError, match="n_jobs"):
        require_joblib(4)


def test_version():
    assert isinstance(uc.__version__, str)
