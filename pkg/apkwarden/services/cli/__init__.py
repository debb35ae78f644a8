from apkwarden.services.cli.main import cli

__all__ = ["cli"]
