from quatlab.manifest import RunManifest, library_versions, result_digest
from quatlab.utils import load_json_file


def test_digest_ignores_key_order():
    assert result_digest({"a": 1, "b": [1, 2]}) == result_digest({"b": [1, 2], "a": 1})
    assert result_digest({"a": 1}) != result_digest({"a": 2})


def test_versions():
    versions = library_versions()
    assert set(versions) == {"quatlab", "numpy", "sympy", "python"}


def test_compressed_round_trip(tmp_path):
    loc = str(tmp_path / "run.json.gz")
    manifest = RunManifest.for_result("dims", 3, {"max_total": 6}, {"entries": []}, 0.25)
    manifest.write(loc)
    back = RunManifest.from_json(load_json_file(loc))
    assert back.reproduces(manifest)
    assert back.wall_clock == 0.25


def test_different_seed_does_not_reproduce():
    a = RunManifest.for_result("msg", 1, {}, [1], 0.0)
    b = RunManifest.for_result("msg", 2, {}, [1], 0.0)
    assert not a.reproduces(b)
