"""Keeps the project root importable for the flat `core` / `visualization` layout."""
