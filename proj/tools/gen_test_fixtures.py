#!/usr/bin/env python3
"""Regenerate the reference fixtures under tests/data/.

Development-only: needs numpy, scipy, scikit-learn, statsmodels. Each fixture
freezes the outputs of a widely used reference implementation on a small
seeded dataset so the C++ solvers can be checked against an independent
source. Run from the repository root:

    python3 tools/gen_test_fixtures.py
"""
import json

import numpy as np
from scipy import special, stats
from sklearn.svm import SVC
import statsmodels.api as sm


def logistic_fixture():
    rng = np.random.default_rng(71)
    n = 60
    x1 = rng.integers(0, 7, n)
    x2 = rng.integers(0, 2, n)
    x3 = rng.integers(0, 5, n)
    X = np.column_stack([x1, x2, x3]).astype(float)
    true = -0.5 + 0.4 * x1 + 1.2 * x2 - 0.7 * x3
    y = (rng.random(n) < 1.0 / (1.0 + np.exp(-true))).astype(float)

    Xc = sm.add_constant(X)
    fit = sm.Logit(y, Xc).fit(disp=0, method="newton", tol=1e-10)
    null = sm.Logit(y, np.ones((n, 1))).fit(disp=0, method="newton", tol=1e-10)
    wald = (fit.params / fit.bse) ** 2
    pvals = special.erfc(np.sqrt(wald / 2.0))
    nagelkerke = (1 - np.exp(2.0 / n * (null.llf - fit.llf))) / (
        1 - np.exp(2.0 / n * null.llf)
    )
    vifs = []
    for j in range(X.shape[1]):
        other = sm.add_constant(np.delete(X, j, axis=1))
        r2 = sm.OLS(X[:, j], other).fit().rsquared
        vifs.append(float(1.0 / (1.0 - r2)))
    return {
        "comment": "statsmodels Logit reference, Newton, tol 1e-10",
        "x": X.astype(int).tolist(),
        "y": y.astype(int).tolist(),
        "coef": fit.params.tolist(),  # intercept first
        "se": fit.bse.tolist(),
        "wald": wald.tolist(),
        "p": pvals.tolist(),
        "log_lik": float(fit.llf),
        "log_lik_null": float(null.llf),
        "nagelkerke_r2": float(nagelkerke),
        "vif": vifs,
        "mean_fitted": float(fit.predict(Xc).mean()),
    }


def svm_fixture():
    rng = np.random.default_rng(402)
    n_half = 17
    a = rng.normal(loc=[-1.0, -0.6], scale=0.9, size=(n_half, 2))
    b = rng.normal(loc=[1.0, 0.8], scale=0.9, size=(n_half, 2))
    X = np.vstack([a, b, a[:3], b[:3]])  # duplicated rows on purpose
    y = np.array([-1] * n_half + [1] * n_half + [-1] * 3 + [1] * 3)
    X = np.round(X, 3)
    gamma, C = 0.7, 1.5

    clf = SVC(kernel="rbf", gamma=gamma, C=C, tol=1e-8)
    clf.fit(X, y)
    alpha_signed = np.zeros(len(X))
    alpha_signed[clf.support_] = clf.dual_coef_[0]
    diff = X[:, None, :] - X[None, :, :]
    K = np.exp(-gamma * np.sum(diff**2, axis=2))
    objective = float(np.abs(alpha_signed).sum() - 0.5 * alpha_signed @ K @ alpha_signed)
    probes = np.round(rng.normal(scale=1.4, size=(8, 2)), 3)
    return {
        "comment": "sklearn SVC reference, rbf, tol 1e-8",
        "x": X.tolist(),
        "y": y.tolist(),
        "gamma": gamma,
        "cost": C,
        "intercept": float(clf.intercept_[0]),
        "objective": objective,
        "n_support": int(clf.support_.size),
        "decision_train": clf.decision_function(X).tolist(),
        "probes": probes.tolist(),
        "decision_probes": clf.decision_function(probes).tolist(),
        "predict_probes": clf.predict(probes).tolist(),
    }


def platt_reference(decision, labels, max_iter=100, min_step=1e-10, sigma=1e-12):
    """Platt scaling by the Lin-Weng-Keerthi Newton method (their Algorithm 1)."""
    f = np.asarray(decision, dtype=float)
    y = np.asarray(labels)
    prior1 = float((y == 1).sum())
    prior0 = float((y == 0).sum())
    hi = (prior1 + 1.0) / (prior1 + 2.0)
    lo = 1.0 / (prior0 + 2.0)
    t = np.where(y == 1, hi, lo)
    a, b = 0.0, np.log((prior0 + 1.0) / (prior1 + 1.0))

    def fval(a, b):
        z = a * f + b
        return float(np.sum(np.where(z >= 0, t * z + np.log1p(np.exp(-z)),
                                     (t - 1) * z + np.log1p(np.exp(z)))))

    fv = fval(a, b)
    for _ in range(max_iter):
        z = a * f + b
        p = np.where(z >= 0, np.exp(-z) / (1 + np.exp(-z)), 1 / (1 + np.exp(z)))
        q = 1 - p
        d1 = t - p
        d2 = p * q
        g1 = float(np.sum(f * d1))
        g2 = float(np.sum(d1))
        if abs(g1) < 1e-5 and abs(g2) < 1e-5:
            break
        h11 = float(np.sum(f * f * d2)) + sigma
        h22 = float(np.sum(d2)) + sigma
        h21 = float(np.sum(f * d2))
        det = h11 * h22 - h21 * h21
        da = -(h22 * g1 - h21 * g2) / det
        db = -(-h21 * g1 + h11 * g2) / det
        gd = g1 * da + g2 * db
        step = 1.0
        while step >= min_step:
            na, nb = a + step * da, b + step * db
            nf = fval(na, nb)
            if nf < fv + 1e-4 * step * gd:
                a, b, fv = na, nb, nf
                break
            step /= 2.0
        else:
            break
    return a, b


def platt_fixture():
    rng = np.random.default_rng(99)
    n = 30
    y = (rng.random(n) < 0.5).astype(int)
    f = np.round(rng.normal(size=n) + np.where(y == 1, 1.1, -1.1), 4)
    a, b = platt_reference(f, y)
    probes = [-3.0, -0.7, 0.0, 0.9, 2.5]
    probs = [1.0 / (1.0 + np.exp(a * p + b)) for p in probes]
    return {
        "comment": "Platt scaling by the Lin-Weng-Keerthi Newton method",
        "decision": f.tolist(),
        "y": y.tolist(),
        "a": float(a),
        "b": float(b),
        "probes": probes,
        "prob_positive": [float(p) for p in probs],
    }


def special_fixture():
    chi2_x = [0.5, 1.0, 3.841458820694124, 10.0, 50.0, 4000.99]
    tt = [(4.242640687119285, 4), (1.0, 9), (0.0, 5), (-2.5, 12), (7.7, 2)]
    return {
        "comment": "scipy reference values",
        "chi2_sf_df1": {"x": chi2_x, "sf": [float(stats.chi2.sf(x, 1)) for x in chi2_x]},
        "t_two_sided": {
            "t": [t for t, _ in tt],
            "df": [df for _, df in tt],
            "p": [float(2 * stats.t.sf(abs(t), df)) for t, df in tt],
        },
    }


def main():
    fixtures = {
        "logistic_fixture.json": logistic_fixture(),
        "svm_fixture.json": svm_fixture(),
        "platt_fixture.json": platt_fixture(),
        "special_fixture.json": special_fixture(),
    }
    for name, data in fixtures.items():
        path = f"tests/data/{name}"
        with open(path, "w") as fh:
            json.dump(data, fh, indent=1)
            fh.write("\n")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
