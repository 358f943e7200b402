"""Regenerate the committed test images in assets/.

The 64x64 scene is a deterministic smooth composition (sky gradient, sun
disk, ridged hills, mild texture) standing in for a downsampled photo: it
is strongly compressible in the DCT domain, which is the property the
pipeline tests rely on.  Run from the repo root:

    python tools/make_test_images.py
"""

import pathlib
import sys

import numpy as np

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from csrecover import ImageBuffer, save_image  # noqa: E402

ASSETS = pathlib.Path(__file__).resolve().parent.parent / "assets"


def gradient_8x8() -> ImageBuffer:
    col = np.linspace(0.0, 1.0, 8)
    px = np.tile(col, (8, 1)).reshape(-1)
    return ImageBuffer(8, 8, 1, px)


def scene_64x64() -> np.ndarray:
    n = 64
    yy, xx = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    u = xx / (n - 1.0)
    v = yy / (n - 1.0)
    sky = 0.75 - 0.45 * v
    sun = 0.35 * np.exp(-(((u - 0.72) ** 2 + (v - 0.22) ** 2) / 0.012))
    ridge = 0.55 + 0.08 * np.sin(2 * np.pi * (1.7 * u + 0.3)) + 0.05 * np.sin(2 * np.pi * 3.1 * u)
    hills = np.where(v > ridge, 0.22 + 0.10 * (1 - v) + 0.04 * np.sin(2 * np.pi * 5 * u), 0.0)
    in_hills = v > ridge
    img = np.where(in_hills, hills, sky + sun)
    texture = 0.015 * np.sin(2 * np.pi * 7 * u) * np.sin(2 * np.pi * 6 * v)
    return np.clip(img + texture, 0.0, 1.0)


def scene_gray() -> ImageBuffer:
    return ImageBuffer(64, 64, 1, scene_64x64().reshape(-1))


def scene_rgb() -> ImageBuffer:
    base = scene_64x64()
    n = 64
    yy, xx = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    v = yy / (n - 1.0)
    r = np.clip(base * 1.10 + 0.05 * (1 - v), 0.0, 1.0)
    g = np.clip(base * 0.95 + 0.03, 0.0, 1.0)
    b = np.clip(base * 0.85 + 0.10 * v, 0.0, 1.0)
    px = np.concatenate([r.reshape(-1), g.reshape(-1), b.reshape(-1)])
    return ImageBuffer(64, 64, 3, px)


def main():
    ASSETS.mkdir(exist_ok=True)
    save_image(gradient_8x8(), ASSETS / "gradient_8x8.pgm")
    save_image(scene_gray(), ASSETS / "scene_64x64.pgm")
    save_image(scene_rgb(), ASSETS / "scene_64x64.ppm")
    print(f"wrote 3 assets to {ASSETS}")


if __name__ == "__main__":
    main()
