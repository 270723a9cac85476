from .analysis_service import analysis_service
from .verification_service import verification_service

__all__ = ["analysis_service", "verification_service"]
