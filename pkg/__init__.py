"""
Isologcon - isoperimetry toolkit for symmetric log-convex measures on the line
"""
