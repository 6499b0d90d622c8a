"""Packaged demo pipeline configurations."""
