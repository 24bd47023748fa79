from .filter import Filter, apply_filters, registry
