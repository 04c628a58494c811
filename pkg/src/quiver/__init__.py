# src/quiver/__init__.py
