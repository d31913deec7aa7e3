# Copyright 2026 The logshap Authors.
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Exact Shapley scores, formal explanations and rank comparison.

Exact values are returned as fractions.Fraction.
"""

import sys
from fractions import Fraction

from logshap._logshap import (
    ComputationError,
    Model,
    ValidationError,
    load_model,
)
from logshap import _logshap

__all__ = [
    "ComputationError",
    "Model",
    "Problem",
    "ValidationError",
    "load_model",
    "main",
    "rank",
    "rbo",
]


def _q(x):
    return str(Fraction(x)) if not isinstance(x, str) else x


def _frac(s):
    return Fraction(s)


class Problem:
    """A model together with a target instance and its similarity predicate.

    `delta` selects the regression threshold; leave it unset for class
    equality. `sample` switches to a model-agnostic universe read from a
    delimited file.
    """

    def __init__(self, model, point, delta=None, sample=None):
        self._p = _logshap.Problem(
            model, [_q(v) for v in point],
            None if delta is None else _q(delta), sample)

    @property
    def prediction(self):
        return self._p.prediction

    @property
    def num_features(self):
        return self._p.num_features

    def is_waxp(self, features):
        return self._p.is_waxp(sorted(features))

    def is_wcxp(self, features):
        return self._p.is_wcxp(sorted(features))

    def axps(self):
        return [frozenset(s) for s in self._p.axps()]

    def cxps(self):
        return [frozenset(s) for s in self._p.cxps()]

    def relevant_features(self):
        return frozenset(self._p.relevant_features())

    def conditional_expectation(self, features):
        return _frac(self._p.conditional_expectation(sorted(features)))

    def shapley(self, game="expected", method="exact", epsilon="1/20",
                alpha="1/20", seed=0, samples=None):
        raw = self._p.shapley(game, method, _q(epsilon), _q(alpha), seed, samples)
        return [_frac(s) for s in raw]

    def misleading(self, scores):
        return frozenset(self._p.misleading([_q(s) for s in scores]))


def rank(scores, absolute=False):
    return _logshap.rank([_q(s) for s in scores], absolute)


def rbo(a, b, persistence="1/2", depth=5):
    return _frac(_logshap.rbo(list(a), list(b), _q(persistence), depth))


def main(argv=None):
    code, out, err = _logshap.run_cli(list(sys.argv[1:] if argv is None else argv))
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


def _console():
    sys.exit(main())
