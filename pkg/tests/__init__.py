"""
Test package for symstab.
"""
