"""Citation statistics: unlikelihood scores, indicator evaluation, field homogeneity."""

from ._citestat import *  # noqa: F401,F403
from ._citestat import CitestatError, __doc__  # noqa: F401
