"""Group files and the built-in catalog."""
