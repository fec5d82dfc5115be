from ._version import __version__
from .helpers import register_status_level

register_status_level()
