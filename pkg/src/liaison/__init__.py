"""Resolutions of linked zero-schemes and multiplicity-bound verification."""
