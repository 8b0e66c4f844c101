"""Error classes shared across the package."""


class ValidationError(Exception):
    """Malformed input data or an invalid configuration (CLI exit code 1)."""


class ProviderError(Exception):
    """An external similarity backend failed or broke its contract (CLI exit code 2)."""
