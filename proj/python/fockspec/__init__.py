# __init__.py - re-export the compiled core
try:
    from ._fockspec import *  # packaged layout: extension inside the package
except ImportError:
    from _fockspec import *  # build-tree layout: extension on sys.path
