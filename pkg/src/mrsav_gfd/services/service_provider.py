"""
Service provider for the mrsav-gfd harness.

This module provides a service locator that hands out the stateless
post-processing and I/O services to the CLI and the run drivers.
"""
from typing import Any, Dict, Optional, Type, TypeVar

from mrsav_gfd.services.interfaces import (
    CheckpointServiceInterface, DiagnosticsServiceInterface, PlotServiceInterface
)
from mrsav_gfd.services.checkpoint_service import CheckpointService
from mrsav_gfd.services.diagnostics_service import DiagnosticsService


T = TypeVar('T')


class ServiceProvider:
    """
    Service provider that manages service instances.

    Tests swap implementations with ``register`` and restore the defaults
    with ``reset``.
    """

    _instance = None

    def __new__(cls):
        """Implement singleton pattern."""
        if cls._instance is None:
            cls._instance = super(ServiceProvider, cls).__new__(cls)
            cls._instance._initialize()
        return cls._instance

    def _initialize(self):
        self._services: Dict[Type, Any] = {}

        # matplotlib is only imported when the plot service is built
        from mrsav_gfd.services.plot_service import PlotService

        self.register(DiagnosticsServiceInterface, DiagnosticsService())
        self.register(CheckpointServiceInterface, CheckpointService())
        self.register(PlotServiceInterface, PlotService())

    def register(self, interface: Type[T], implementation: T) -> None:
        """
        Register a service implementation.

        Args:
            interface: The service interface
            implementation: The service implementation
        """
        self._services[interface] = implementation

    def get(self, interface: Type[T]) -> Optional[T]:
        return self._services.get(interface)

    @classmethod
    def reset(cls) -> None:
        cls._instance = None

    @classmethod
    def get_diagnostics_service(cls) -> DiagnosticsServiceInterface:
        """
        Get the diagnostics service.

        Returns:
            The diagnostics service implementation
        """
        return cls().get(DiagnosticsServiceInterface)

    @classmethod
    def get_checkpoint_service(cls) -> CheckpointServiceInterface:
        return cls().get(CheckpointServiceInterface)

    @classmethod
    def get_plot_service(cls) -> PlotServiceInterface:
        return cls().get(PlotServiceInterface)
