"""Finite presentations of liftable and balanced superelliptic mapping class groups."""
