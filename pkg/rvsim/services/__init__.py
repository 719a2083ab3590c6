"""Services: image files and trial metrics."""
