""" File access for matrix inputs and run manifests. """
import bz2
import gzip
import json
import lzma
from typing import Any, Callable, Dict, Optional, TextIO

from quatlab.errors import InputError
from quatlab.jsonable import JsonParsingError, dump_json

_OPENERS = {"gz": gzip.open, "xz": lzma.open, "bz2": bz2.open}  # type: Dict[str, Callable[..., Any]]


def compression_of(loc: str, compression: Optional[str] = None) -> Optional[str]:
    """ Explicit compression wins; otherwise it is guessed from the file suffix. None means plain text. """
    if compression:
        if compression not in _OPENERS:
            raise InputError("Unknown compression %s, expected one of %s" % (compression, sorted(_OPENERS)))
        return compression
    suffix = loc.rsplit(".", 1)[-1]
    return suffix if suffix in _OPENERS else None


def maybe_compressed_open(loc: str, mode: str = 'rt', compression: Optional[str] = None) -> TextIO:
    """
    Open file with UTF-8, which may be compressed with gz, xz, bz2 or uncompressed.
    Default mode is 'rt', can be overwritten.
    """
    kind = compression_of(loc, compression)
    if kind is None:
        return open(loc, mode=mode, encoding='utf-8')
    return _OPENERS[kind](loc, mode=mode, encoding='utf-8')


def load_json_file(loc: str, compression: Optional[str] = None) -> Any:
    """ Reads one JSON document; decoding failures surface as JsonParsingError. """
    with maybe_compressed_open(loc, 'rt', compression) as f:
        text = f.read()
    try:
        return json.loads(text)
    except ValueError as e:
        raise JsonParsingError("File %s is not valid JSON (%s). " % (loc, e), text[:200])


def write_json_file(loc: str, data: Any, compression: Optional[str] = None) -> None:
    """ Writes `data` in canonical form, one document per file. """
    with maybe_compressed_open(loc, 'wt', compression) as f:
        f.write(dump_json(data))
        f.write("\n")
