# -*- coding: utf-8 -*-
#
# Configuration file for the Sphinx documentation builder.
# See http://www.sphinx-doc.org/en/master/config

# usageclusters should have been installed, for the version here, as well as
# for the autodoc
from usageclusters import __version__


# -- Project information -----------------------------------------------------

project = 'usageclusters'
copyright = '2025, the usageclusters developers'
author = 'the usageclusters developers'

# The short X.Y version
version = __version__.removesuffix(".dev")
# The full version, including alpha/beta/rc tags
release = __version__


# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.intersphinx',
    'sphinx.ext.todo',
    'sphinx.ext.extlinks',
    'sphinx.ext.napoleon',
    'sphinx.ext.viewcode',
    'sphinx_toolbox.collapse',
]

extlinks = {
    "issue": ("https://github.com/usageclusters/usageclusters/issues/%s", "GH %s"),
    "pull": ("https://github.com/usageclusters/usageclusters/pull/%s", "PR %s"),
}

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'
language = 'en'
exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']
pygments_style = 'sphinx'


# -- Options for HTML output -------------------------------------------------

html_theme = 'alabaster'

html_theme_options = {
      'github_user': 'usageclusters',
      'github_repo': 'usageclusters',
      'github_banner': 'false',  # "Fork me on Github" banner
      'github_button': 'false',  # Button with e.g. stars number
      'logo_name': "usageclusters",
      'description': "clusters of similar usages of a symbol in Java code",
      }

html_static_path = []
html_sidebars = {}
htmlhelp_basename = 'usageclustersdoc'


# -- Extension configuration -------------------------------------------------

# If true, `todo` and `todoList` produce output, else they produce nothing.
todo_include_todos = True

# Options for napoleon

napoleon_google_docstring = False
napoleon_numpy_docstring = True
napoleon_use_param = False
napoleon_use_ivar = True
