"""End-to-end acceptance tests for gesturedyn."""
