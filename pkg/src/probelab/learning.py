"""Learning to probe: labels, trainers, serialization, and the model prober.

Labels simulate the lookahead value of probing a candidate: probe it, then
let the path heuristic spend the rest of a small horizon, and count
everything newly observed.  A linear model regresses that value from the
candidate's observed-graph features; a pairwise logistic model learns which
of two candidates is the better probe.
"""

import json
from dataclasses import dataclass, field

import numpy as np
from scipy.special import expit

from .features import FEATURE_NAMES, feature_matrix
from .graph import BLACK, ProbeTrace
from .planner import tada_heuristic
from .sampling import bfs_sample, draw_sizes

RIDGE_LAMBDA = 1e-6
LOGISTIC_STEP = 0.1
LOGISTIC_MAX_EPOCHS = 5000
LOGISTIC_GRAD_TOL = 1e-6
DEFAULT_PAIR_CAP = 2000
DEFAULT_POOL_CAP = 200


class TrainingError(ValueError):
    pass


@dataclass
class TrainingSample:
    sample_id: int
    node: int
    features: np.ndarray     # 11 raw features
    label: float


@dataclass
class PairSample:
    sample_id: int
    u: int
    v: int
    features: np.ndarray     # concat of u's then v's 11 raw features
    label: int               # 1 iff u's benefit >= v's


def label_benefit(view, u, horizon, oracle=None):
    """Lookahead value of probing u: u's discoveries plus what the oracle
    planner finds with the remaining horizon-1 budget."""
    if horizon < 1:
        raise ValueError("need horizon >= 1")
    oracle = tada_heuristic if oracle is None else oracle
    work = view.copy()
    first = work.probe(int(u))
    if horizon == 1:
        return first
    return first + oracle(work, horizon - 1).total_new


def build_training_set(graph, config, horizon, rng=None,
                       pair_cap=DEFAULT_PAIR_CAP, oracle=None):
    """Sample views from a reference graph and label every gray candidate.

    Returns (samples, pairs).  Pairs combine candidates from within the same
    view only; at most pair_cap pairs per view are kept (uniformly chosen
    once the full cross count exceeds the cap).
    """
    if rng is None:
        rng = np.random.default_rng(config.seed)
    sizes = draw_sizes(config, graph.n, rng)
    samples = []
    pairs = []
    for sample_id, size in enumerate(sizes):
        view = bfs_sample(graph, int(size), rng)
        nodes, mat = feature_matrix(view)
        labels = np.array(
            [label_benefit(view, int(u), horizon, oracle=oracle)
             for u in nodes], dtype=np.float64)
        by_node = {}
        for row, u in enumerate(nodes):
            samples.append(TrainingSample(sample_id, int(u),
                                          mat[row].copy(), float(labels[row])))
            by_node[int(u)] = row
        g = nodes.size
        total = g * (g - 1) // 2
        if total == 0:
            continue
        iu, ju = np.triu_indices(g, k=1)
        if total > pair_cap:
            sel = rng.choice(total, size=pair_cap, replace=False)
            sel.sort()
            iu, ju = iu[sel], ju[sel]
        for i, j in zip(iu.tolist(), ju.tolist()):
            u, v = int(nodes[i]), int(nodes[j])
            feats = np.concatenate([mat[i], mat[j]])
            pairs.append(PairSample(sample_id, u, v, feats,
                                    int(labels[i] >= labels[j])))
    return samples, pairs


@dataclass(eq=False)
class Model:
    """Trained prober: standardization stats plus weights.

    weights[0] is the intercept.  Linear models keep 11 feature weights;
    pairwise logistic models keep 22 (candidate block then opponent block).
    Standardization always uses the 11 per-feature stats from training data.
    """

    kind: str
    horizon: int
    feature_names: tuple
    mean: np.ndarray
    std: np.ndarray
    weights: np.ndarray
    loss_history: list = field(default_factory=list, repr=False, compare=False)

    def __eq__(self, other):
        # bitwise equality so a serialization round trip can be asserted
        if not isinstance(other, Model):
            return NotImplemented
        return (self.kind == other.kind and self.horizon == other.horizon
                and tuple(self.feature_names) == tuple(other.feature_names)
                and np.array_equal(self.mean, other.mean)
                and np.array_equal(self.std, other.std)
                and np.array_equal(self.weights, other.weights))

    def standardize(self, X):
        return (np.asarray(X, dtype=np.float64) - self.mean) / self.std

    def linear_scores(self, X):
        if self.kind != "linear":
            raise ValueError("not a linear model")
        return self.weights[0] + self.standardize(X) @ self.weights[1:]

    def pair_logits(self, X):
        """Matrix of logits 'row candidate beats column candidate'."""
        if self.kind != "logistic":
            raise ValueError("not a logistic model")
        Z = self.standardize(X)
        a = Z @ self.weights[1:12]
        b = Z @ self.weights[12:]
        return self.weights[0] + a[:, None] + b[None, :]

    def pair_probability(self, fu, fv):
        zu = self.standardize(np.asarray(fu, dtype=np.float64))
        zv = self.standardize(np.asarray(fv, dtype=np.float64))
        logit = (self.weights[0] + zu @ self.weights[1:12]
                 + zv @ self.weights[12:])
        return float(expit(logit))


def _standardization(X):
    mean = X.mean(axis=0)
    std = X.std(axis=0)
    std = np.where(std == 0, 1.0, std)  # constant features pass through
    return mean, std


def train_linear(samples, horizon=1):
    """Closed-form ridge regression (lambda=1e-6) on standardized features.

    The intercept is unpenalized, so constant labels land entirely on it.
    """
    if not samples:
        raise TrainingError("no training samples")
    X = np.stack([s.features for s in samples])
    y = np.array([s.label for s in samples], dtype=np.float64)
    mean, std = _standardization(X)
    Z = (X - mean) / std
    A = np.hstack([np.ones((len(samples), 1)), Z])
    reg = np.eye(A.shape[1]) * RIDGE_LAMBDA
    reg[0, 0] = 0.0
    try:
        w = np.linalg.solve(A.T @ A + reg, A.T @ y)
    except np.linalg.LinAlgError as exc:
        raise TrainingError(f"normal equations singular: {exc}") from exc
    if not np.all(np.isfinite(w)):
        raise TrainingError("non-finite weights from normal equations")
    return Model(kind="linear", horizon=horizon, feature_names=FEATURE_NAMES,
                 mean=mean, std=std, weights=w)


def _logistic_loss(logits, y):
    # mean cross-entropy via softplus, stable for large |logit|
    return float(np.mean(y * np.logaddexp(0.0, -logits)
                         + (1 - y) * np.logaddexp(0.0, logits)))


def train_logistic(pairs, horizon=1):
    """Full-batch gradient descent on the pairwise win/lose logistic loss.

    Fixed step 0.1, at most 5000 epochs, stopping early when the gradient's
    L2 norm drops below 1e-6.  Records the per-epoch loss trajectory on the
    returned model.  Rejects single-class inputs.
    """
    if not pairs:
        raise TrainingError("no training pairs")
    F = np.stack([p.features for p in pairs])
    y = np.array([p.label for p in pairs], dtype=np.float64)
    if y.min() == y.max():
        raise TrainingError("pairs all share one label; cannot train")
    halves = F.reshape(-1, len(FEATURE_NAMES))
    mean, std = _standardization(halves)
    Z = (F - np.tile(mean, 2)) / np.tile(std, 2)
    X = np.hstack([np.ones((len(pairs), 1)), Z])
    w = np.zeros(X.shape[1])
    history = []
    for _ in range(LOGISTIC_MAX_EPOCHS):
        logits = X @ w
        history.append(_logistic_loss(logits, y))
        grad = X.T @ (expit(logits) - y) / len(pairs)
        gnorm = float(np.linalg.norm(grad))
        if gnorm < LOGISTIC_GRAD_TOL:
            break
        w = w - LOGISTIC_STEP * grad
    return Model(kind="logistic", horizon=horizon,
                 feature_names=FEATURE_NAMES, mean=mean, std=std, weights=w,
                 loss_history=history)


def model_prober(view, model, k, pool_cap=DEFAULT_POOL_CAP):
    """Probe k times following the trained model's choices.

    Decisions use only observed-graph features.  Linear models take the
    highest predicted benefit; logistic models play a round robin over the
    candidate pool (capped at pool_cap grays of highest observed degree) and
    probe the candidate with the most predicted wins.  Ties go to smaller id.
    """
    if k < 1:
        raise ValueError("need k >= 1")
    work = view.copy()
    steps = []
    for _ in range(k):
        grays = work.gray_nodes()
        if grays.size == 0:
            break
        if model.kind == "linear":
            nodes, X = feature_matrix(work, grays)
            scores = model.linear_scores(X)
            pick = int(nodes[int(np.argmax(scores))])
        else:
            pool = grays
            if pool.size > pool_cap:
                # observed degree of a gray node = its black neighbor count
                deg = np.array(
                    [np.count_nonzero(
                        work.color[work.graph.neighbors(int(u))] == BLACK)
                     for u in pool])
                order = np.lexsort((pool, -deg))
                pool = np.sort(pool[order[:pool_cap]])
            nodes, X = feature_matrix(work, pool)
            logits = model.pair_logits(X)
            wins = (logits >= 0).sum(axis=1) - (np.diag(logits) >= 0)
            pick = int(nodes[int(np.argmax(wins))])
        steps.append((pick, work.probe(pick)))
    return ProbeTrace.from_steps(steps)


def save_model(model, sink):
    """Write a model as self-describing JSON text."""
    payload = {
        "kind": model.kind,
        "horizon": int(model.horizon),
        "features": list(model.feature_names),
        "mean": [float(x) for x in model.mean],
        "std": [float(x) for x in model.std],
        "weights": [float(x) for x in model.weights],
    }
    text = json.dumps(payload, indent=2) + "\n"
    if hasattr(sink, "write"):
        sink.write(text)
    else:
        with open(sink, "w") as fh:
            fh.write(text)


def load_model(source):
    """Inverse of save_model; validates shapes against the declared kind."""
    if hasattr(source, "read"):
        payload = json.load(source)
    else:
        with open(source) as fh:
            payload = json.load(fh)
    kind = payload["kind"]
    nfeat = len(payload["features"])
    weights = np.array(payload["weights"], dtype=np.float64)
    expected = 1 + nfeat if kind == "linear" else 1 + 2 * nfeat
    if kind not in ("linear", "logistic"):
        raise ValueError(f"unknown model kind {kind!r}")
    if weights.size != expected:
        raise ValueError(
            f"{kind} model needs {expected} weights, file has {weights.size}")
    mean = np.array(payload["mean"], dtype=np.float64)
    std = np.array(payload["std"], dtype=np.float64)
    if mean.size != nfeat or std.size != nfeat:
        raise ValueError("standardization stats do not match feature count")
    return Model(kind=kind, horizon=int(payload["horizon"]),
                 feature_names=tuple(payload["features"]),
                 mean=mean, std=std, weights=weights)
