"""
Diagram spaces over the index categories I and J - verification library and CLI
"""
__version__ = "0.1.0"
