import json
import pathlib
import subprocess
import sys

import numpy as np
import pytest

ASSETS = pathlib.Path(__file__).resolve().parent.parent / "assets"


def run_cli(*args, cwd=None):
    return subprocess.run(
        [sys.executable, "-m", "csrecover", *map(str, args)],
        capture_output=True, text=True, cwd=cwd,
    )


def masked_report(text: str):
    """Parse report JSON with every wall_ms value replaced by a placeholder."""
    doc = json.loads(text)

    def scrub(node):
        if isinstance(node, dict):
            return {k: ("X" if k == "wall_ms" else scrub(v)) for k, v in node.items()}
        if isinstance(node, list):
            return [scrub(v) for v in node]
        return node

    return scrub(doc)


@pytest.fixture
def gradient_8x8():
    return ASSETS / "gradient_8x8.pgm"


@pytest.fixture
def scene_gray():
    return ASSETS / "scene_64x64.pgm"


@pytest.fixture
def scene_rgb():
    return ASSETS / "scene_64x64.ppm"


def make_p5(path, width, height, payload: bytes):
    with open(path, "wb") as fh:
        fh.write(b"P5\n%d %d\n255\n" % (width, height))
        fh.write(payload)
    return path


@pytest.fixture
def image_10x10(tmp_path):
    rng = np.random.default_rng(123)
    return make_p5(tmp_path / "in.pgm", 10, 10, bytes(rng.integers(0, 256, size=100, dtype=np.uint8)))
