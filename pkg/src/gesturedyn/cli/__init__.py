"""gesturedyn CLI - unified command-line interface."""
