"""Configuration module for RelSpin EPR."""
from .settings import settings

__all__ = ["settings"]
