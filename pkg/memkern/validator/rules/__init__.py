from .misc import *
from .numeric import *
from .rule import *
