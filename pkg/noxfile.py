import os
import tempfile
import nox

tempdir = tempfile.mkdtemp(prefix="nox-usageclusters-")
nox.options.envdir = os.path.join(tempdir, "venvs")

nox.options.default_venv_backend = "uv|virtualenv"

ENV = {
        'USAGECLUSTERS_PROGRESS_BAR': 'False'
        }

NOXFILE_DIR = os.path.dirname(__file__)

GUAVA_MINI = os.path.join(NOXFILE_DIR, "pytest", "corpora", "guava_mini")


def run_tests(session):
    with session.chdir(session.create_tmp()):
        session.run("python", "-m", "pytest", os.path.join(NOXFILE_DIR, "pytest"), env=ENV)
        session.run('python', '-c', '"import usageclusters; print(usageclusters.__version__)"')
        session.run('usageclusters', '--help')
        session.run('usageclusters', 'find', 'initCapacity', '--root', GUAVA_MINI, env=ENV)
        session.run('usageclusters', 'find', 'initCapacity', '--root', GUAVA_MINI, '--format', 'json', env=ENV)


@nox.session
def build_and_test_on_latest_env(session):
    # By default, pip will install the latest dependencies compatible with the
    # constraints in pyproject.toml.
    session.install(".[test,optional]")
    run_tests(session)


@nox.session
def editable_build_and_test_on_latest_env(session):
    session.install("--editable", ".[test,optional]")
    run_tests(session)


@nox.session
def build_and_test_without_optional_dependencies(session):
    session.install(".", "pytest")
    run_tests(session)
