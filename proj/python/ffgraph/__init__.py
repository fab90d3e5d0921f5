from ._ffgraph import *  # noqa: F401,F403
from ._ffgraph import __doc__  # noqa: F401
