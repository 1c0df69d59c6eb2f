from ._pluri import *  # noqa
