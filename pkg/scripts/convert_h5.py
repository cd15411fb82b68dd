"""Convert the 64x64 RGB cat/non-cat HDF5 files to DIGA1 dataset files.

    python3 scripts/convert_h5.py train_catvnoncat.h5 test_catvnoncat.h5 --out ref/

Pixels are stored unscaled (0-255 as float32); load with normalize 255
(``--normalize 255`` on the CLI). Each image is flattened row-major over
height, width, channel, giving 12288 features.
"""

import argparse
from pathlib import Path

import h5py
import numpy as np

from diga.data_io import write_dataset


def read_split(path):
    with h5py.File(path, "r") as fh:
        xkey = next(k for k in fh.keys() if k.endswith("_x"))
        ykey = next(k for k in fh.keys() if k.endswith("_y"))
        x = np.asarray(fh[xkey])
        y = np.asarray(fh[ykey]).ravel()
    return x.reshape(x.shape[0], -1).T.astype(np.float32), y.astype(np.uint8)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("train")
    ap.add_argument("test")
    ap.add_argument("--out", type=Path, required=True)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for src, name in ((args.train, "train.diga"), (args.test, "test.diga")):
        X, Y = read_split(src)
        write_dataset(args.out / name, X, Y)
        print(f"{name}: {X.shape[0]} features x {X.shape[1]} examples, {int(Y.sum())} positive")


if __name__ == "__main__":
    main()
