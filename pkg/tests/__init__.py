"""
gesturedyn test suite
"""
