# src/lie/__init__.py
