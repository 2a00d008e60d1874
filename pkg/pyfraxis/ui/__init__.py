"""Terminal user interface for browsing stored runs."""
