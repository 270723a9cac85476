from . import spectrum_router

__all__ = ["spectrum_router"]
