"""Classifier name registry shared by the CLI and the estimator bindings."""

from dataclasses import dataclass

import numpy as np

from .boss import BossEnsembleConfig, boss_ensemble_fit, boss_predict_proba
from .distances import MEASURES, DistanceSpec
from .exceptions import UnknownClassifier
from .intervals import (
    RISE_FEATURE_PLAN,
    TSF_FEATURE_PLAN,
    ComposedPipelineSpec,
    RandomIntervals,
    RiseConfig,
    SingleRandomInterval,
    TsfConfig,
    composed_fit,
    interval_predict_proba,
    rise_fit,
    tsf_fit,
)
from .neighbors import (
    EeConfig,
    NnModel,
    PfConfig,
    ee_fit,
    ee_predict_proba,
    nn1_classify,
    pf_fit,
    pf_predict_proba,
)
from .shapelets import StcConfig, stc_fit, stc_predict_proba
from .trees import TreeConfig


@dataclass(frozen=True)
class ClassifierRunner:
    name: str
    parameter_text: str
    fit: object
    predict_proba: object


def _text(pairs):
    return ",".join(f"{k}={v}" for k, v in pairs)


def _nn_default_params(measure):
    if measure in ("dtw", "ddtw"):
        return {"w": 1.0}
    if measure in ("wdtw", "wddtw"):
        return {"g": 0.0}
    if measure == "euclidean":
        return {}
    return None  # lcss/erp/msm/twed need explicit parameters


def _build_nn(measure, seed, options):
    params = options.get("params")
    if not params:
        params = _nn_default_params(measure)
        if params is None:
            raise UnknownClassifier(
                f"nn-{measure} needs explicit --param values (no defaults exist)"
            )
    spec = DistanceSpec(measure, dict(params))

    def predict(model, test):
        return np.vstack([nn1_classify(model, c.values)[1] for c in test.series])

    return ClassifierRunner(
        f"nn-{measure}",
        _text([("measure", measure)] + sorted(spec.params.items()) + [("seed", seed)]),
        lambda train: NnModel(train, spec),
        predict,
    )


def build_classifier(name, seed=0, options=None):
    """Construct a fit/predict runner for a registered classifier name."""
    options = dict(options or {})
    threads = int(options.get("threads", 1))

    if name == "tsf" or name == "tsf-composed":
        n_trees = int(options.get("n_trees", 100))
        text = _text([("n_trees", n_trees), ("seed", seed)])
        if name == "tsf":
            config = TsfConfig(n_trees=n_trees, seed=seed)
            return ClassifierRunner(
                name, text, lambda train: tsf_fit(train, config), interval_predict_proba
            )
        spec = ComposedPipelineSpec(
            RandomIntervals("sqrt"), TSF_FEATURE_PLAN, TreeConfig(seed=seed), n_trees
        )
        return ClassifierRunner(
            name, text, lambda train: composed_fit(train, spec, seed), interval_predict_proba
        )

    if name == "rise" or name == "rise-composed":
        n_trees = int(options.get("n_trees", 50))
        text = _text([("n_trees", n_trees), ("seed", seed)])
        if name == "rise":
            config = RiseConfig(n_trees=n_trees, seed=seed)
            return ClassifierRunner(
                name, text, lambda train: rise_fit(train, config), interval_predict_proba
            )
        spec = ComposedPipelineSpec(
            SingleRandomInterval(5), RISE_FEATURE_PLAN, TreeConfig(seed=seed), n_trees
        )
        return ClassifierRunner(
            name, text, lambda train: composed_fit(train, spec, seed), interval_predict_proba
        )

    if name in ("boss", "cboss"):
        randomised = name == "cboss"
        config = BossEnsembleConfig(
            randomised_ensemble=randomised,
            n_parameter_samples=int(options.get("n_parameter_samples", 250)),
            max_ensemble_size=int(options.get("max_ensemble_size", 50)),
            time_limit_minutes=options.get("contract_minutes"),
            seed=seed,
        )
        pairs = [("randomised", randomised), ("seed", seed)]
        if randomised:
            pairs = [
                ("max_ensemble_size", config.max_ensemble_size),
                ("n_parameter_samples", config.n_parameter_samples),
                ("randomised", True),
                ("seed", seed),
                ("time_limit_minutes", config.time_limit_minutes),
            ]
        return ClassifierRunner(
            name,
            _text(pairs),
            lambda train: boss_ensemble_fit(train, config),
            boss_predict_proba,
        )

    if name == "stc":
        max_candidates = options.get("max_candidates")
        contract_minutes = options.get("contract_minutes")
        if max_candidates is not None:
            contract_minutes = None
        elif contract_minutes is None:
            contract_minutes = 300.0
        config = StcConfig(
            max_candidates=None if max_candidates is None else int(max_candidates),
            contract_minutes=contract_minutes,
            forest_trees=int(options.get("forest_trees", 500)),
            seed=seed,
        )
        text = _text(
            [
                ("contract_minutes", config.contract_minutes),
                ("forest_trees", config.forest_trees),
                ("max_candidates", config.max_candidates),
                ("seed", seed),
            ]
        )
        return ClassifierRunner(
            name, text, lambda train: stc_fit(train, config), stc_predict_proba
        )

    if name == "ee":
        config = EeConfig(
            proportion_of_param_options=float(
                options.get("proportion_of_param_options", 1.0)
            ),
            proportion_of_train_in_param_finding=float(
                options.get("proportion_of_train_in_param_finding", 1.0)
            ),
            seed=seed,
            threads=threads,
        )
        text = _text(
            [
                ("proportion_of_param_options", config.proportion_of_param_options),
                (
                    "proportion_of_train_in_param_finding",
                    config.proportion_of_train_in_param_finding,
                ),
                ("seed", seed),
            ]
        )
        return ClassifierRunner(
            name, text, lambda train: ee_fit(train, config), ee_predict_proba
        )

    if name == "pf":
        config = PfConfig(
            n_trees=int(options.get("n_trees", 100)),
            n_stump_evaluations=int(options.get("n_stump_evaluations", 5)),
            seed=seed,
        )
        text = _text(
            [
                ("n_stump_evaluations", config.n_stump_evaluations),
                ("n_trees", config.n_trees),
                ("seed", seed),
            ]
        )
        return ClassifierRunner(
            name, text, lambda train: pf_fit(train, config), pf_predict_proba
        )

    if name.startswith("nn-"):
        measure = name[3:]
        if measure in MEASURES:
            return _build_nn(measure, seed, options)

    raise UnknownClassifier(f"no classifier registered under {name!r}")


REGISTERED_CLASSIFIERS = (
    "tsf",
    "tsf-composed",
    "rise",
    "rise-composed",
    "boss",
    "cboss",
    "stc",
    "ee",
    "pf",
) + tuple(f"nn-{m}" for m in MEASURES)
