"""gradedfields tests."""
