from .container import Container, ShallowContainer
from .registry import Registry, ClassRegistry
