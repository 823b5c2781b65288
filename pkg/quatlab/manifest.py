""" Run manifests: what was run, with which seed and configuration, and a digest of the result. """
import hashlib
import platform
from typing import Any, Dict, Optional

import numpy
import sympy

from quatlab import __version__
from quatlab.jsonable import Jsonable, dump_json, getKey, optKey
from quatlab.utils import write_json_file


def result_digest(result: Any) -> str:
    """ SHA-256 of the canonical JSON of `result`. """
    return hashlib.sha256(dump_json(result).encode('utf-8')).hexdigest()


def library_versions() -> Dict[str, str]:
    return {"quatlab": __version__, "numpy": numpy.__version__, "sympy": sympy.__version__,
            "python": platform.python_version()}


class RunManifest(Jsonable):
    """
    Identical (command, seed, config) must reproduce the same digest; wall-clock and versions are informational.
    """
    def __init__(self, command: str, seed: Optional[int], config: Dict[str, Any], digest: str,
                 wall_clock: float = 0.0, versions: Optional[Dict[str, str]] = None) -> None:
        self.command = command
        self.seed = seed
        self.config = config
        self.digest = digest
        self.wall_clock = wall_clock
        self.versions = versions if versions is not None else library_versions()

    @staticmethod
    def for_result(command: str, seed: Optional[int], config: Dict[str, Any], result: Any,
                   wall_clock: float) -> "RunManifest":
        return RunManifest(command, seed, config, result_digest(result), wall_clock)

    def reproduces(self, other: "RunManifest") -> bool:
        return (self.command, self.seed, self.config, self.digest) == \
               (other.command, other.seed, other.config, other.digest)

    def to_json(self) -> Dict[str, Any]:
        return {"command": self.command, "seed": self.seed, "config": self.config,
                "versions": self.versions, "wall_clock": self.wall_clock, "result_sha256": self.digest}

    @staticmethod
    def from_json(data: Any) -> "RunManifest":
        return RunManifest(getKey(data, "command"), optKey(data, "seed"), getKey(data, "config"),
                           getKey(data, "result_sha256"), getKey(data, "wall_clock"), getKey(data, "versions"))

    def write(self, loc: str, compression: Optional[str] = None) -> None:
        write_json_file(loc, self.to_json(), compression)
