from .json import ExtendedJsonEncoder, dump_meta, dumps_meta
