"""Naive Bayes and logistic regression text classifiers, splits and evaluation reports."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import scipy.sparse as sp
from scipy.special import expit, logsumexp
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_is_fitted


class TrainingError(ValueError):
    pass


def _as_matrix(X):
    if sp.issparse(X):
        return sp.csr_matrix(X, dtype=np.float64)
    return np.asarray(X, dtype=np.float64)


def _check_targets(y) -> tuple[np.ndarray, np.ndarray]:
    y = np.asarray(y)
    classes, encoded = np.unique(y, return_inverse=True)
    if len(classes) < 2:
        raise TrainingError(f"need at least two classes to train, got {list(classes)}")
    return classes, encoded


class MultinomialNB(ClassifierMixin, BaseEstimator):
    """Multinomial naive Bayes with additive (Lidstone) smoothing."""

    def __init__(self, alpha=1.0):
        self.alpha = alpha

    def fit(self, X, y):
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")
        X = _as_matrix(X)
        self.classes_, encoded = _check_targets(y)
        if X.shape[0] != len(encoded):
            raise ValueError("X and y have different numbers of rows")
        onehot = np.eye(len(self.classes_))[encoded]
        class_count = onehot.sum(axis=0)
        feature_count = np.asarray(onehot.T @ X)
        smoothed = feature_count + self.alpha
        self.class_count_ = class_count
        self.feature_count_ = feature_count
        self.class_log_prior_ = np.log(class_count / class_count.sum())
        self.feature_log_prob_ = np.log(smoothed) - np.log(smoothed.sum(axis=1, keepdims=True))
        return self

    def joint_log_likelihood(self, X):
        check_is_fitted(self, "feature_log_prob_")
        X = _as_matrix(X)
        return np.asarray(X @ self.feature_log_prob_.T) + self.class_log_prior_

    def predict_log_proba(self, X):
        jll = self.joint_log_likelihood(X)
        return jll - logsumexp(jll, axis=1, keepdims=True)

    def predict_proba(self, X):
        return np.exp(self.predict_log_proba(X))

    def predict(self, X):
        return self.classes_[np.argmax(self.joint_log_likelihood(X), axis=1)]


class OvRLogisticRegression(ClassifierMixin, BaseEstimator):
    """One-vs-rest logistic regression trained by full-batch gradient descent.

    Each class has its own weight vector and bias. The objective is the sum
    over classes of mean binary cross-entropy plus ``l2 / 2 * ||w||^2``;
    biases are not penalized. Weights start at zero (plus optional seeded
    noise of scale ``init_scale``) and biases at the log-odds of the class
    priors, so an untrained model predicts the majority class.
    """

    def __init__(self, l2=1e-4, epochs=300, lr=0.5, random_state=0, init_scale=0.0):
        self.l2 = l2
        self.epochs = epochs
        self.lr = lr
        self.random_state = random_state
        self.init_scale = init_scale

    def _init_params(self, n_features: int, priors: np.ndarray):
        rng = np.random.default_rng(self.random_state)
        W = self.init_scale * rng.standard_normal((n_features, len(priors)))
        p = np.clip(priors, 1e-12, 1 - 1e-12)
        b = np.log(p) - np.log1p(-p)
        return W, b

    def loss_and_grad(self, W, b, X, Y):
        """Objective value and its gradient with respect to ``W`` and ``b``."""
        n = X.shape[0]
        Z = np.asarray(X @ W) + b
        # log(1 + exp(z)) - y * z is the per-entry cross-entropy
        loss = (np.logaddexp(0.0, Z) - Y * Z).sum() / n + 0.5 * self.l2 * np.sum(W * W)
        residual = (expit(Z) - Y) / n
        grad_W = np.asarray(X.T @ residual) + self.l2 * W
        grad_b = residual.sum(axis=0)
        return float(loss), grad_W, grad_b

    def fit(self, X, y):
        X = _as_matrix(X)
        self.classes_, encoded = _check_targets(y)
        Y = np.eye(len(self.classes_))[encoded]
        W, b = self._init_params(X.shape[1], Y.mean(axis=0))
        curve = []
        with np.errstate(over="ignore", invalid="ignore"):
            for _ in range(int(self.epochs)):
                loss, gW, gb = self.loss_and_grad(W, b, X, Y)
                if not math.isfinite(loss):
                    raise TrainingError(f"non-finite loss after {len(curve)} epochs")
                curve.append(loss)
                W = W - self.lr * gW
                b = b - self.lr * gb
            loss, _, _ = self.loss_and_grad(W, b, X, Y)
        if not math.isfinite(loss):
            raise TrainingError("non-finite loss at the end of training")
        curve.append(loss)
        self.coef_ = W.T
        self.intercept_ = b
        self.loss_curve_ = curve
        return self

    def decision_function(self, X):
        check_is_fitted(self, "coef_")
        X = _as_matrix(X)
        return np.asarray(X @ self.coef_.T) + self.intercept_

    def predict_proba(self, X):
        scores = expit(self.decision_function(X))
        return scores / scores.sum(axis=1, keepdims=True)

    def predict(self, X):
        return self.classes_[np.argmax(self.decision_function(X), axis=1)]


def train_nb(X, y, alpha: float = 1.0) -> MultinomialNB:
    return MultinomialNB(alpha=alpha).fit(X, y)


def train_logreg(X, y, l2: float = 1e-4, epochs: int = 300, lr: float = 0.5, seed: int = 0):
    return OvRLogisticRegression(l2=l2, epochs=epochs, lr=lr, random_state=seed).fit(X, y)


CLASSIFIERS = {"nb": MultinomialNB, "logreg": OvRLogisticRegression}


def make_classifier(name: str, seed: int = 0):
    if name == "nb":
        return MultinomialNB()
    if name == "logreg":
        return OvRLogisticRegression(random_state=seed)
    raise ValueError(f"unknown classifier {name!r}; expected one of {sorted(CLASSIFIERS)}")


@dataclass(frozen=True)
class Split:
    train: np.ndarray
    test: np.ndarray
    seed: int
    test_fraction: float = 0.2
    stratified: bool = True


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def make_split(labels: Sequence, seed: int = 0, test_fraction: float = 0.2, stratified: bool = True) -> Split:
    """Seeded train/test partition of document indices.

    Under stratification each class sends ``round(fraction * size)`` members
    to the test side, capped so that every class keeps one training member.
    """
    labels = np.asarray(labels)
    if not 0.0 < test_fraction < 1.0:
        raise ValueError("test_fraction must lie in (0, 1)")
    if len(labels) == 0:
        raise ValueError("cannot split an empty label sequence")
    rng = np.random.default_rng(seed)
    test: list[int] = []
    if stratified:
        for cls in np.unique(labels):
            members = np.flatnonzero(labels == cls)
            if len(members) < 1:
                raise ValueError(f"class {cls!r} has no members")
            k = min(_round_half_up(test_fraction * len(members)), len(members) - 1)
            test.extend(rng.permutation(members)[:k].tolist())
    else:
        if len(labels) < 2:
            raise ValueError("need at least two documents to split")
        k = min(max(_round_half_up(test_fraction * len(labels)), 1), len(labels) - 1)
        test.extend(rng.permutation(len(labels))[:k].tolist())
    test_idx = np.array(sorted(test), dtype=np.int64)
    mask = np.ones(len(labels), dtype=bool)
    mask[test_idx] = False
    return Split(np.flatnonzero(mask), test_idx, seed, test_fraction, stratified)


@dataclass
class EvalReport:
    labels: list
    precision: np.ndarray
    recall: np.ndarray
    f1: np.ndarray
    support: np.ndarray
    confusion: np.ndarray

    @property
    def confusion_normalized(self) -> np.ndarray:
        rows = self.confusion.sum(axis=1, keepdims=True).astype(np.float64)
        return np.divide(self.confusion, rows, out=np.zeros(self.confusion.shape), where=rows > 0)

    @property
    def macro(self) -> dict[str, float]:
        return {
            "p": float(self.precision.mean()),
            "r": float(self.recall.mean()),
            "f1": float(self.f1.mean()),
        }

    @property
    def weighted(self) -> dict[str, float]:
        total = self.support.sum()
        w = self.support / total if total else np.zeros_like(self.precision)
        return {
            "p": float(self.precision @ w),
            "r": float(self.recall @ w),
            "f1": float(self.f1 @ w),
        }

    def to_dict(self) -> dict:
        return {
            "labels": [str(label) for label in self.labels],
            "per_class": {
                str(label): {
                    "p": float(self.precision[i]),
                    "r": float(self.recall[i]),
                    "f1": float(self.f1[i]),
                    "support": int(self.support[i]),
                }
                for i, label in enumerate(self.labels)
            },
            "macro": self.macro,
            "weighted": self.weighted,
            "confusion": self.confusion.astype(int).tolist(),
            "confusion_normalized": self.confusion_normalized.tolist(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False)

    def to_text(self, title: str = "") -> str:
        width = max([len(str(lab)) for lab in self.labels] + [12])
        head = f"{'':<{width}}  {'Precision':>9}  {'Recall':>9}  {'F1':>9}  {'Support':>7}"
        lines = [title] if title else []
        lines.append(head)
        for i, label in enumerate(self.labels):
            lines.append(
                f"{str(label):<{width}}  {self.precision[i]:>9.2f}  {self.recall[i]:>9.2f}"
                f"  {self.f1[i]:>9.2f}  {int(self.support[i]):>7d}"
            )
        total = int(self.support.sum())
        for name, avg in (("macro avg", self.macro), ("weighted avg", self.weighted)):
            lines.append(
                f"{name:<{width}}  {avg['p']:>9.2f}  {avg['r']:>9.2f}  {avg['f1']:>9.2f}  {total:>7d}"
            )
        return "\n".join(lines)


def report_from_confusion(confusion, labels: Sequence) -> EvalReport:
    """Per-class precision, recall and F1 from a true-by-predicted count matrix.

    Every ratio with a zero denominator is defined as 0.
    """
    cm = np.asarray(confusion, dtype=np.int64)
    tp = np.diag(cm).astype(np.float64)
    predicted = cm.sum(axis=0).astype(np.float64)
    actual = cm.sum(axis=1).astype(np.float64)
    precision = np.divide(tp, predicted, out=np.zeros_like(tp), where=predicted > 0)
    recall = np.divide(tp, actual, out=np.zeros_like(tp), where=actual > 0)
    denom = precision + recall
    f1 = np.divide(2 * precision * recall, denom, out=np.zeros_like(tp), where=denom > 0)
    return EvalReport(list(labels), precision, recall, f1, cm.sum(axis=1), cm)


def confusion_matrix(y_true, y_pred, labels: Sequence) -> np.ndarray:
    position = {label: i for i, label in enumerate(labels)}
    cm = np.zeros((len(labels), len(labels)), dtype=np.int64)
    for t, p in zip(y_true, y_pred):
        cm[position[t], position[p]] += 1
    return cm


def evaluate_predictions(y_true, y_pred, labels: Optional[Sequence] = None) -> EvalReport:
    y_true = list(y_true)
    y_pred = list(y_pred)
    if not y_true:
        raise ValueError("empty test set")
    if labels is None:
        labels = sorted(set(y_true) | set(y_pred))
    return report_from_confusion(confusion_matrix(y_true, y_pred, labels), labels)


def evaluate(model, X_test, y_test) -> EvalReport:
    """Score a fitted classifier; test labels unknown to the model count as never predicted."""
    check_is_fitted(model, "classes_")
    y_test = [_plain(v) for v in y_test]
    predictions = [_plain(v) for v in model.predict(X_test)]
    labels = sorted(set(_plain(c) for c in model.classes_) | set(y_test))
    return evaluate_predictions(y_test, predictions, labels)


def _plain(value):
    return value.item() if isinstance(value, np.generic) else value
