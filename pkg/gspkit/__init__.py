"""
gspkit - Guillotine strip packing toolkit
"""

__version__ = "1.0.0"
