"""Tilings by convex polygons and marked Penrose prototiles."""
