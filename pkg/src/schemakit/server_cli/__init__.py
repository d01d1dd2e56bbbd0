"""Persistence, HTTP API, and command-line front door."""
