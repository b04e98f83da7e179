#!/usr/bin/env python3
"""Regenerate the benchmark images under crates/core/testdata from scikit-image samples.

Output is deterministic for a given scikit-image version. Requires numpy and scikit-image.
"""
import os
import numpy as np
from skimage import color, data, transform

OUT = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "testdata")


def gray_u8(im):
    if im.ndim == 3:
        im = (color.rgb2gray(im[..., :3]) * 255).round()
    return np.asarray(im, dtype=np.uint8)


def square(im, side):
    h, w = im.shape[:2]
    s = min(h, w)
    y, x = (h - s) // 2, (w - s) // 2
    im = im[y:y + s, x:x + s]
    if s == side:
        return im
    out = transform.resize(im, (side, side) + im.shape[2:], anti_aliasing=True, preserve_range=True)
    return out.round().clip(0, 255).astype(np.uint8)


def write_pgm(path, im):
    h, w = im.shape
    with open(path, "wb") as f:
        f.write(b"P5\n%d %d\n255\n" % (w, h))
        f.write(np.ascontiguousarray(im, dtype=np.uint8).tobytes())


def write_ppm(path, im):
    h, w, _ = im.shape
    with open(path, "wb") as f:
        f.write(b"P6\n%d %d\n255\n" % (w, h))
        f.write(np.ascontiguousarray(im[..., :3], dtype=np.uint8).tobytes())


def moved(frame, shifts):
    """Copy of `frame` with rectangular regions displaced, one per (y, x, h, w, dy, dx)."""
    out = frame.copy()
    for (y, x, h, w, dy, dx) in shifts:
        out[y:y + h, x:x + w] = frame[y + dy:y + dy + h, x + dx:x + dx + w]
    return out


def main():
    os.makedirs(OUT, exist_ok=True)
    cam = gray_u8(data.camera())

    # Single-image benchmarks.
    write_pgm(os.path.join(OUT, "cameraman.pgm"), square(cam, 256))
    write_pgm(os.path.join(OUT, "page.pgm"), square(gray_u8(data.page()), 256))
    write_ppm(os.path.join(OUT, "coffee.ppm"), data.coffee())
    write_pgm(os.path.join(OUT, "motion_a.pgm"), cam)
    write_pgm(os.path.join(OUT, "motion_b.pgm"),
              moved(cam, [(100, 150, 100, 100, 10, 15), (300, 300, 80, 120, -10, 10)]))

    # Dataset batch directories.
    gray_dir = os.path.join(OUT, "dataset", "gray")
    rgb_dir = os.path.join(OUT, "dataset", "rgb")
    motion_dir = os.path.join(OUT, "dataset", "motion")
    for d in (gray_dir, rgb_dir, motion_dir):
        os.makedirs(d, exist_ok=True)
    for name in ["camera", "page", "coins", "moon", "text", "clock", "grass", "gravel"]:
        write_pgm(os.path.join(gray_dir, name + ".pgm"), square(gray_u8(getattr(data, name)()), 256))
    for name in ["astronaut", "chelsea", "coffee", "rocket"]:
        write_ppm(os.path.join(rgb_dir, name + ".ppm"), square(getattr(data, name)(), 256))
    base = square(gray_u8(data.astronaut()), 256)
    frames = [base]
    for step in range(1, 4):
        frames.append(moved(base, [(40, 60, 50, 50, 3 * step, 2 * step), (150, 140, 40, 60, -2 * step, 3 * step)]))
    for i, f in enumerate(frames):
        write_pgm(os.path.join(motion_dir, "frame_%02d.pgm" % i), f)


if __name__ == "__main__":
    main()
