#!/usr/bin/env python3
"""Fetch the reference photographs used by the acceptance suite.

The images are not redistributed with this repository. This script pulls them
from the scikit-image 0.9.3 source release on PyPI (which still shipped the
classic Lena test image), verifies the archive checksum, and writes:

  lena512.pgm   512x512 grayscale Lena (rgb2gray luma, rounded)
  lena256.pgm   256x256, bicubic (antialiased) downscale of lena512
  camera512.pgm 512x512 "cameraman", fallback natural photo

Requires numpy and Pillow.
"""

import argparse
import hashlib
import io
import pathlib
import sys
import tarfile
import urllib.request

import numpy as np
from PIL import Image

SDIST_URL = (
    "https://files.pythonhosted.org/packages/71/e7/"
    "881fa2b6195141a2b91035b63ff78a6f11c5dbec5d39b012e9fadc193a95/"
    "scikit-image-0.9.3.tar.gz"
)
SDIST_SHA256 = "2c29c65aacdfc056efd0a3b713b5dde666356ffb39e5e2bad3e0d6dbb62524b3"
MEMBERS = {
    "lena": "scikit-image-0.9.3/skimage/data/lena.png",
    "camera": "scikit-image-0.9.3/skimage/data/camera.png",
}

# Luma weights of MATLAB's rgb2gray.
LUMA = np.array([0.2989, 0.5870, 0.1140])


def fetch(url: str, sdist: pathlib.Path | None) -> bytes:
    if sdist is not None:
        data = sdist.read_bytes()
    else:
        with urllib.request.urlopen(url, timeout=120) as resp:
            data = resp.read()
    digest = hashlib.sha256(data).hexdigest()
    if digest != SDIST_SHA256:
        sys.exit(f"checksum mismatch: got {digest}, expected {SDIST_SHA256}")
    return data


def to_gray(img: Image.Image) -> Image.Image:
    arr = np.asarray(img)
    if arr.ndim == 3:
        y = np.floor(arr[..., :3].astype(np.float64) @ LUMA + 0.5)
        arr = np.clip(y, 0, 255).astype(np.uint8)
    return Image.fromarray(arr, mode="L")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=pathlib.Path,
                        default=pathlib.Path(__file__).resolve().parent.parent / "data")
    parser.add_argument("--sdist", type=pathlib.Path,
                        help="use an already downloaded scikit-image-0.9.3.tar.gz")
    args = parser.parse_args()

    archive = fetch(SDIST_URL, args.sdist)
    args.out.mkdir(parents=True, exist_ok=True)
    with tarfile.open(fileobj=io.BytesIO(archive), mode="r:gz") as tar:
        images = {k: Image.open(io.BytesIO(tar.extractfile(m).read())) for k, m in MEMBERS.items()}

    lena = to_gray(images["lena"])
    outputs = {
        "lena512.pgm": lena,
        "lena256.pgm": lena.resize((256, 256), Image.BICUBIC),
        "camera512.pgm": to_gray(images["camera"]),
    }
    for name, img in outputs.items():
        path = args.out / name
        img.save(path, format="PPM")
        print(f"{hashlib.sha256(path.read_bytes()).hexdigest()}  {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
