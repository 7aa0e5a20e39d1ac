#
# Sphinx configuration for the intergraph documentation.
#
# License: BSD 3-Clause

import os
import re
import sys

import sphinx_rtd_theme  # noqa
from numpydoc import numpydoc  # noqa

sys.path.insert(0, os.path.abspath("../.."))

extensions = [
    "sphinx.ext.autodoc",
    "numpydoc",
    "sphinx.ext.viewcode",
    "sphinx.ext.autosummary",
    "sphinx.ext.doctest",
    "sphinx.ext.intersphinx",
    "sphinx.ext.mathjax",
]

autosummary_generate = True
numpydoc_show_class_members = False

source_suffix = [".rst"]
source_encoding = "utf-8-sig"
master_doc = "index"

project = "intergraph"
copyright = "2026, The intergraph developers"
author = "The intergraph developers"

__version__ = re.search(
    r'__version__\s*=\s*[\'"]([^\'"]*)[\'"]',  # It excludes inline comment too
    open("../../intergraph/version.py").read(),
).group(1)
version = __version__
release = __version__

language = "en"
exclude_patterns = ["build"]
pygments_style = "default"
highlight_language = "python3"

html_theme = "sphinx_rtd_theme"
html_theme_options = {}
html_title = "intergraph"
htmlhelp_basename = "intergraphdoc"

man_pages = [(master_doc, "intergraph", "intergraph", [author], 1)]

intersphinx_mapping = {
    "python": ("https://docs.python.org/3", None),
    "numpy": ("https://numpy.org/doc/stable/", None),
    "scipy": ("https://docs.scipy.org/doc/scipy/", None),
    "sklearn": ("https://scikit-learn.org/stable/", None),
    "joblib": ("https://joblib.readthedocs.io/en/latest/", None),
}
