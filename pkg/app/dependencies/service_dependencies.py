from functools import lru_cache

from app.services.cartan_service import CartanService
from app.services.forms_service import FormsService
from app.services.prolong_service import ProlongService
from app.services.series_service import SeriesService


class ServiceProvider:
    """
    A dependency container that provides instances of all services.

    Each getter is cached, so one provider hands out a single instance
    of every service; the prolong service shares the cartan service.
    """

    @lru_cache(maxsize=None)
    def get_cartan_service(self) -> CartanService:
        """Returns the CartanService of this provider."""
        return CartanService()

    @lru_cache(maxsize=None)
    def get_prolong_service(self) -> ProlongService:
        """Returns the ProlongService of this provider."""
        return ProlongService(self.get_cartan_service())

    @lru_cache(maxsize=None)
    def get_series_service(self) -> SeriesService:
        """Returns the SeriesService of this provider."""
        return SeriesService()

    @lru_cache(maxsize=None)
    def get_forms_service(self) -> FormsService:
        """Returns the FormsService of this provider."""
        return FormsService()
