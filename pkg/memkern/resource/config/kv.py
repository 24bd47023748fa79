from memkern.base import ShallowContainer


def kv_file(filename: str) -> ShallowContainer:
    """
    Load a plain key=value config file

    Blank lines and lines starting with '#' are ignored; values keep surrounding text verbatim
    except for stripped whitespace
    :param filename: path to config file
    :return: ShallowContainer with str values
    """
    try:
        with open(filename) as cfg_file:
            lines = cfg_file.read().splitlines()
    except (IOError, UnicodeDecodeError) as e:
        raise OSError("an exception occurred when loading config file {}: {}".format(filename, str(e)))

    contents = {}
    for lineno, line in enumerate(lines, start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or not key:
            raise ValueError("config file {}: line {}: expected key=value".format(filename, lineno))
        if key in contents:
            raise ValueError("config file {}: line {}: duplicate key '{}'".format(filename, lineno, key))
        contents[key] = value.strip()

    return ShallowContainer(contents)
