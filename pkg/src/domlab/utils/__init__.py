"""
Utility modules for domlab

Configuration loading and logging setup shared by the engine and the CLI.
"""
