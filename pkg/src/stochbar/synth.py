"""Generated digit images for offline desk-scale runs.

Seven-segment glyph templates rendered onto a 28x28 canvas, then augmented
per sample with a random rotation, scale, shear, shift, blur, intensity
jitter and pixel noise. Shapes and value ranges match the classic
handwritten-digit files, and the generated sets are written through the
IDX writer so the real data path is exercised end to end.
"""

from __future__ import annotations

from functools import lru_cache
from pathlib import Path

import numpy as np
from scipy import ndimage

from .data import Dataset, load_dataset, save_idx
from .rng import substream

# (r0, c0, r1, c1) endpoints inside a 20x12 glyph box
_SEGMENTS = {
    "A": (1, 1, 1, 10),
    "B": (1, 10, 9, 10),
    "C": (11, 10, 19, 10),
    "D": (19, 1, 19, 10),
    "E": (11, 1, 19, 1),
    "F": (1, 1, 9, 1),
    "G": (10, 1, 10, 10),
}
_DIGIT_SEGMENTS = [
    "ABCDEF", "BC", "ABGED", "ABGCD", "FGBC",
    "AFGCD", "AFGECD", "ABC", "ABCDEFG", "ABCDFG",
]


def _glyph(digit: int, thickness: float = 1.6) -> np.ndarray:
    img = np.zeros((28, 28))
    row0, col0 = 4, 8
    yy, xx = np.mgrid[0:28, 0:28]
    for name in _DIGIT_SEGMENTS[digit]:
        r0, c0, r1, c1 = _SEGMENTS[name]
        r0, r1, c0, c1 = r0 + row0, r1 + row0, c0 + col0, c1 + col0
        pr, pc = yy - r0, xx - c0
        dr, dc = r1 - r0, c1 - c0
        t = np.clip((pr * dr + pc * dc) / (dr * dr + dc * dc), 0.0, 1.0)
        d = np.sqrt((pr - t * dr) ** 2 + (pc - t * dc) ** 2)
        img = np.maximum(img, np.clip(1.8 - d / thickness * 1.8, 0.0, 1.0))
    return np.clip(img, 0.0, 1.0)


@lru_cache(maxsize=1)
def _templates() -> np.ndarray:
    return np.stack([_glyph(d) for d in range(10)])


def _augment(rng: np.random.Generator, digit: int) -> np.ndarray:
    img = _templates()[digit]
    theta = np.deg2rad(rng.normal(0.0, 7.0))
    scale = rng.uniform(0.85, 1.15)
    shear = rng.normal(0.0, 0.08)
    rot = np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]])
    mat = rot @ np.array([[1.0 / scale, shear], [0.0, 1.0 / scale]])
    center = np.array([13.5, 13.5])
    shift = rng.uniform(-2.5, 2.5, size=2)
    offset = center - mat @ (center + shift)
    out = ndimage.affine_transform(img, mat, offset=offset, order=1, mode="constant")
    out = ndimage.gaussian_filter(out, rng.uniform(0.4, 0.9))
    out = out * rng.uniform(0.75, 1.0) + rng.normal(0.0, 0.06, out.shape)
    return np.clip(out, 0.0, 1.0)


def generate_digits(n: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Make ``n`` augmented glyph images as uint8, with labels.

    Fully determined by ``seed``; label mix is uniform over 0-9.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    rng = substream(seed)
    labels = rng.integers(0, 10, size=n)
    images = np.stack([_augment(rng, int(d)) for d in labels])
    return np.round(images * 255).astype(np.uint8), labels.astype(np.int64)


def write_digit_files(
    out_dir: str | Path, n_train: int, n_test: int, seed: int
) -> dict[str, Path]:
    """Generate train/test sets and write the four IDX files.

    Returns the path map with keys ``train_images``, ``train_labels``,
    ``test_images``, ``test_labels``.
    """
    out_dir = Path(out_dir)
    paths = {
        "train_images": out_dir / "train-images-idx3-ubyte",
        "train_labels": out_dir / "train-labels-idx1-ubyte",
        "test_images": out_dir / "test-images-idx3-ubyte",
        "test_labels": out_dir / "test-labels-idx1-ubyte",
    }
    # disjoint substreams so train/test stay independent draws
    tr_images, tr_labels = generate_digits(n_train, seed)
    te_images, te_labels = generate_digits(n_test, seed + 1)
    save_idx(paths["train_images"], tr_images)
    save_idx(paths["train_labels"], tr_labels.astype(np.uint8))
    save_idx(paths["test_images"], te_images)
    save_idx(paths["test_labels"], te_labels.astype(np.uint8))
    return paths


def load_or_generate(
    out_dir: str | Path, n_train: int, n_test: int, seed: int
) -> tuple[Dataset, Dataset]:
    """Load the generated files from ``out_dir``, creating them if absent."""
    out_dir = Path(out_dir)
    names = ["train-images-idx3-ubyte", "train-labels-idx1-ubyte",
             "test-images-idx3-ubyte", "test-labels-idx1-ubyte"]
    if not all((out_dir / n).exists() for n in names):
        write_digit_files(out_dir, n_train, n_test, seed)
    train = load_dataset(out_dir / names[0], out_dir / names[1])
    test = load_dataset(out_dir / names[2], out_dir / names[3])
    return train, test
