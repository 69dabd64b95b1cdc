# -*- coding: utf-8 -*-
#
# pylyzec documentation build configuration file
#
# This file is execfile()d with the current directory set to its containing
# dir.
#
import sys, os
import datetime

local_path = os.path.abspath(os.path.join(os.path.dirname(__file__), '..'))
sys.path.insert(0, local_path)

import pylyzec

# -- General configuration -----------------------------------------------------

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.intersphinx',
              'sphinx.ext.todo', 'sphinx.ext.doctest', 'sphinx.ext.mathjax']

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'pylyzec'
year = datetime.datetime.now().year
copyright = str(year) + u', the pylyzec developers'

version = pylyzec.__version__
release = pylyzec.__version__

exclude_patterns = ['build']

add_function_parentheses = True
pygments_style = 'sphinx'

# -- Options for HTML output ---------------------------------------------------

html_theme = 'default'
html_static_path = []
htmlhelp_basename = 'pylyzecdoc'

# -- Options for LaTeX output --------------------------------------------------

latex_elements = {
}

latex_documents = [
  ('index', 'pylyzec.tex', u'pylyzec Documentation',
   u'the pylyzec developers', 'manual'),
]

# -- Options for manual page output --------------------------------------------

man_pages = [
    ('index', 'lyprobe', u'pylyzec Documentation',
     [u'the pylyzec developers'], 1)
]

autodoc_member_order = 'bysource'

intersphinx_mapping = {'python': ('https://docs.python.org/3', None),
                       'numpy': ('https://numpy.org/doc/stable/', None),
                       'scipy': ('https://docs.scipy.org/doc/scipy/', None)}
