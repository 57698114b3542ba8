"""Entry point for running stackcount as a module.

Allows running the application with:
    python -m stackcount

This delegates to the Typer CLI app.
"""

from stackcount.cli import app

if __name__ == "__main__":
    app()
