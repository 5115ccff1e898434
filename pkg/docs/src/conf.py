# Sphinx configuration for the ska-tropical-newton documentation.

import os
import sys

sys.path.insert(0, os.path.abspath("../../src"))

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.napoleon",
    "sphinx.ext.doctest",
    "sphinx.ext.intersphinx",
    "sphinx.ext.mathjax",
    "sphinx.ext.viewcode",
    "myst_parser",
]

source_suffix = [".rst", ".md"]
master_doc = "index"

project = "ska-tropical-newton"
copyright = "2024, SKA Organization"
author = "Team Nakshatra"
version = "0.1.0"
release = "0.1.0"

language = "en"
exclude_patterns = []
pygments_style = "sphinx"

autodoc_member_order = "bysource"
autodoc_typehints = "description"

html_theme = "ska_ser_sphinx_theme"
htmlhelp_basename = "ska-tropical-newtondoc"

latex_documents = [
    (
        master_doc,
        "ska-tropical-newton.tex",
        "ska-tropical-newton Documentation",
        author,
        "manual",
    ),
]

man_pages = [
    (
        master_doc,
        "ska-tropical-newton",
        "ska-tropical-newton Documentation",
        [author],
        1,
    )
]

intersphinx_mapping = {"python": ("https://docs.python.org/3", None)}
