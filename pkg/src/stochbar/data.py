"""Dataset and weight-archive I/O.

Images and labels use the classic IDX binary layout (big-endian header:
two zero bytes, a type code, a dimension count, then one 32-bit size per
dimension, then raw data). Only the unsigned-byte type code 0x08 is
supported, which covers the standard digit files.

Trained weights round-trip through a small versioned ``.npz`` archive.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DataError

IDX_UBYTE_TYPE = 0x08
_IDX_DTYPE = np.dtype(">u1")


@dataclass(frozen=True)
class Dataset:
    """Images normalized to [0, 1] plus integer labels."""

    images: np.ndarray  # (n, height, width) float64 in [0, 1]
    labels: np.ndarray  # (n,) int64

    def __post_init__(self) -> None:
        if self.images.ndim != 3:
            raise DataError(f"images must be (n, h, w), got shape {self.images.shape}")
        if self.labels.ndim != 1 or len(self.labels) != len(self.images):
            raise DataError(
                f"{len(self.images)} images but label shape {self.labels.shape}"
            )

    def __len__(self) -> int:
        return len(self.images)

    def flat(self) -> np.ndarray:
        """Images flattened to (n, h*w) feature rows."""
        n = len(self.images)
        return self.images.reshape(n, -1)


def load_idx(path: str | Path) -> np.ndarray:
    """Read one IDX file into a uint8 array of the declared shape.

    Raises :class:`DataError` on a bad magic, an unsupported type code, or
    a size that disagrees with the header.
    """
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    if len(raw) < 4:
        raise DataError(f"{path}: truncated header ({len(raw)} bytes)")
    zero, type_code, ndim = struct.unpack(">HBB", raw[:4])
    if zero != 0:
        raise DataError(f"{path}: bad magic {raw[:4]!r} (first two bytes must be zero)")
    if type_code != IDX_UBYTE_TYPE:
        raise DataError(f"{path}: unsupported type code 0x{type_code:02x} (only ubyte 0x08)")
    if ndim < 1 or ndim > 3:
        raise DataError(f"{path}: unsupported dimension count {ndim}")
    header_len = 4 + 4 * ndim
    if len(raw) < header_len:
        raise DataError(f"{path}: truncated dimension header")
    shape = struct.unpack(f">{ndim}I", raw[4:header_len])
    expected = int(np.prod(shape))
    body = raw[header_len:]
    if len(body) != expected:
        raise DataError(
            f"{path}: header promises {expected} bytes for shape {shape}, found {len(body)}"
        )
    return np.frombuffer(body, dtype=_IDX_DTYPE).reshape(shape).astype(np.uint8)


def save_idx(path: str | Path, array: np.ndarray) -> None:
    """Write a uint8 array (1-3 dims) in IDX layout."""
    a = np.ascontiguousarray(array, dtype=np.uint8)
    if a.ndim < 1 or a.ndim > 3:
        raise DataError(f"can only write 1-3 dims, got shape {a.shape}")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "wb") as fh:
        fh.write(struct.pack(">HBB", 0, IDX_UBYTE_TYPE, a.ndim))
        fh.write(struct.pack(f">{a.ndim}I", *a.shape))
        fh.write(a.tobytes())


def load_dataset(images_path: str | Path, labels_path: str | Path) -> Dataset:
    """Load an image/label IDX pair and normalize pixels to [0, 1]."""
    images = load_idx(images_path)
    labels = load_idx(labels_path)
    if images.ndim != 3:
        raise DataError(f"{images_path}: expected 3-D image data, got shape {images.shape}")
    if labels.ndim != 1:
        raise DataError(f"{labels_path}: expected 1-D labels, got shape {labels.shape}")
    if len(images) != len(labels):
        raise DataError(
            f"count mismatch: {len(images)} images vs {len(labels)} labels"
        )
    return Dataset(images=images.astype(float) / 255.0, labels=labels.astype(np.int64))


ARCHIVE_VERSION = 1


@dataclass(frozen=True)
class WeightArchive:
    """Trained weights plus the layer widths they belong to."""

    weights: list[np.ndarray]
    dims: tuple[int, ...]
    version: int = ARCHIVE_VERSION


def _check_chain(weights: list[np.ndarray], dims: tuple[int, ...]) -> None:
    if len(weights) != len(dims) - 1:
        raise DataError(f"{len(weights)} weight matrices do not fit dims {dims}")
    for l, w in enumerate(weights):
        n_in = dims[l] if l == 0 else dims[l] + 1
        if w.shape != (n_in, dims[l + 1]):
            raise DataError(
                f"layer {l}: shape {w.shape} does not match dims {dims} "
                f"(expected {(n_in, dims[l + 1])})"
            )


def save_weights(path: str | Path, weights: list[np.ndarray], dims) -> None:
    """Persist a trained stack as a versioned ``.npz`` archive."""
    dims = tuple(int(d) for d in dims)
    ws = [np.asarray(w, dtype=np.float64) for w in weights]
    if not ws:
        raise DataError("no weight matrices to save")
    _check_chain(ws, dims)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = {f"layer_{l}": w for l, w in enumerate(ws)}
    np.savez(
        path,
        version=np.int64(ARCHIVE_VERSION),
        dims=np.asarray(dims, dtype=np.int64),
        **payload,
    )


def load_weights(path: str | Path) -> WeightArchive:
    """Load a weight archive, validating version and shape chain."""
    path = Path(path)
    try:
        with np.load(path) as npz:
            contents = {k: npz[k] for k in npz.files}
    except (OSError, ValueError) as exc:
        raise DataError(f"cannot read weight archive {path}: {exc}") from exc
    if "version" not in contents or "dims" not in contents:
        raise DataError(f"{path}: not a weight archive (missing version/dims)")
    version = int(contents["version"])
    if version != ARCHIVE_VERSION:
        raise DataError(f"{path}: archive version {version}, expected {ARCHIVE_VERSION}")
    dims = tuple(int(d) for d in contents["dims"])
    n_layers = len(dims) - 1
    try:
        weights = [contents[f"layer_{l}"].astype(np.float64) for l in range(n_layers)]
    except KeyError as exc:
        raise DataError(f"{path}: missing weight matrix {exc}") from exc
    _check_chain(weights, dims)
    return WeightArchive(weights=weights, dims=dims, version=version)
