import json as _json

from ._kuperberg import *  # noqa: F401,F403
from ._kuperberg import dimension_report as _dimension_report


def dimension(p=None, **settings):
    """Dimension report as a dict."""
    if p is None:
        p = PlugParams()  # noqa: F405
    return _json.loads(_dimension_report(p, **settings))
