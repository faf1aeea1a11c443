"""Finite-scale machinery for rectangular structures, splitting amalgams and generic filters."""
