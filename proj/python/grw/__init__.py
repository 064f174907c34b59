from ._grw import *  # noqa: F401,F403
from ._grw import __version__  # noqa: F401
