# Copyright 2026 The GCA Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Reference fit for the logistic probe.

Writes tests/data/probe_blobs.tsv: a 3-class Gaussian blob fixture followed by
the regularised objective, test accuracy and class probabilities of the
optimum found by scikit-learn's lbfgs solver.

The probe minimises mean cross-entropy + (l2 / 2) ||W||^2 with an unpenalised
bias, which is sklearn's objective with C = 1 / (l2 * n_train).
"""
import sys

import numpy as np
from sklearn.linear_model import LogisticRegression

N_PER_CLASS = 100
DIM = 4
N_TRAIN = 200
L2_VALUES = (1e-3, 1e-1)


def license_header():
    # The first 13 lines of this script are the license block.
    with open(__file__) as f:
        return "".join(f.readlines()[:13])


def objective(model, x, y, l2):
    logits = x @ model.coef_.T + model.intercept_
    logits -= logits.max(axis=1, keepdims=True)
    log_p = logits - np.log(np.exp(logits).sum(axis=1, keepdims=True))
    return -log_p[np.arange(len(y)), y].mean() + 0.5 * l2 * (model.coef_ ** 2).sum()


def main(out_path):
    rng = np.random.default_rng(20260101)
    centers = rng.normal(scale=1.5, size=(3, DIM))
    x = np.concatenate([c + rng.normal(size=(N_PER_CLASS, DIM)) for c in centers])
    y = np.repeat(np.arange(3), N_PER_CLASS)
    order = rng.permutation(len(y))
    x, y = x[order], y[order]
    with open(out_path, "w") as f:
        f.write(license_header())
        f.write("# label features...\n")
        for row, label in zip(x, y):
            f.write("\t".join([str(label)] + [repr(float(v)) for v in row]) + "\n")
        for l2 in L2_VALUES:
            model = LogisticRegression(C=1.0 / (l2 * N_TRAIN), tol=1e-12, max_iter=100000)
            model.fit(x[:N_TRAIN], y[:N_TRAIN])
            acc = (model.predict(x[N_TRAIN:]) == y[N_TRAIN:]).mean()
            f.write(f"fit\t{l2!r}\t{float(objective(model, x[:N_TRAIN], y[:N_TRAIN], l2))!r}\t{float(acc)!r}\n")
            for p in model.predict_proba(x[N_TRAIN:N_TRAIN + 10]):
                f.write("prob\t" + "\t".join(repr(float(v)) for v in p) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/data/probe_blobs.tsv")
