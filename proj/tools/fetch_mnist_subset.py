#!/usr/bin/env python3
"""Write a small MNIST subset in IDX format.

No network access to the usual MNIST mirrors is assumed. The mlxtend wheel
ships the first 5000 training images as a gzipped CSV (784 pixels + label),
so the wheel is fetched through pip and converted.
"""
import argparse
import csv
import gzip
import io
import pathlib
import struct
import subprocess
import sys
import tempfile
import zipfile

MEMBER = "mlxtend/data/data/mnist_5k.csv.gz"


def fetch_rows(wheel_dir):
    wheels = sorted(pathlib.Path(wheel_dir).glob("mlxtend-*.whl"))
    if not wheels:
        subprocess.run([sys.executable, "-m", "pip", "download", "--no-deps", "-q",
                        "-d", str(wheel_dir), "mlxtend"], check=True)
        wheels = sorted(pathlib.Path(wheel_dir).glob("mlxtend-*.whl"))
    with zipfile.ZipFile(wheels[-1]) as zf:
        raw = gzip.decompress(zf.read(MEMBER)).decode()
    return [list(map(int, map(float, r))) for r in csv.reader(io.StringIO(raw)) if r]


def write_idx(out_dir, prefix, rows):
    images = bytearray(struct.pack(">IIII", 2051, len(rows), 28, 28))
    labels = bytearray(struct.pack(">II", 2049, len(rows)))
    for r in rows:
        images.extend(bytes(r[:784]))
        labels.append(r[784])
    (out_dir / f"{prefix}-images-idx3-ubyte").write_bytes(images)
    (out_dir / f"{prefix}-labels-idx1-ubyte").write_bytes(labels)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "data" / "mnist"))
    ap.add_argument("--count", type=int, default=1000)
    ap.add_argument("--wheel-dir", default=None)
    args = ap.parse_args()

    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    with tempfile.TemporaryDirectory() as tmp:
        rows = fetch_rows(args.wheel_dir or tmp)
    if len(rows) < args.count:
        sys.exit(f"only {len(rows)} rows available")
    for r in rows:
        if len(r) != 785 or not all(0 <= v <= 255 for v in r):
            sys.exit("unexpected row layout")
    write_idx(out, f"subset{args.count}", rows[:args.count])
    print(f"wrote {args.count} images to {out}")


if __name__ == "__main__":
    main()
