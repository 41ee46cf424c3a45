"""Utility functions for dicke-sim."""
