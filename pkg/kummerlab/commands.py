"""Named operations behind the command line, one static method each."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional

from pydantic import ValidationError

from kummerlab.annuli import Annulus, is_isomorphic, length
from kummerlab.codec import (
    format_rational,
    interval_to_dict,
    newton_to_list,
    parse_logmag,
    parse_rational,
    to_jsonable,
)
from kummerlab.cochains import (
    eval_surjective,
    harm_group,
    is_bridge,
    theta_assemble,
    truncate,
)
from kummerlab.config import Config, Settings, annulus_from_model
from kummerlab.errors import InconsistentVerdict, InputError, InternalError
from kummerlab.lengthlab.harness import length_grid, thm1_sweep
from kummerlab.lengthlab.profiles import localize, profile_direct, profile_from_torsors
from kummerlab.newton import (
    dominant_degree,
    eval_at,
    image_interval,
    is_coordinate,
    normalize,
    split_locus,
)
from kummerlab.oracles.cochains import MAX_LABELINGS, HarmEnumerationOracle
from kummerlab.oracles.dominance import SamplingDominanceOracle
from kummerlab.oracles.splitting import RecenteringOracle, ResidueRootSearchOracle
from kummerlab.points import (
    TrunkPoint,
    fiber_count,
    fiber_count_recursive,
    fiber_tree,
    power_fiber_count,
    push_p,
)
from kummerlab.samples import random_class_suite
from kummerlab.schema import AnnulusModel
from kummerlab.torsors.radii import (
    RadiusBound,
    RigidPoint,
    segment_verdict,
    split_radius_rigid,
)
from kummerlab.torsors.verdicts import Verdict, split_verdict_at
from kummerlab.torsors.witnesses import witness_skeleton_solvable, witness_threshold_solvable
from kummerlab.valnum import POS_INF, Thresholds

logger = logging.getLogger(__name__)

DEFAULT_SUITE_SIZE = 100


@dataclass
class CommandResult:
    """Payload of one command; ``unknown`` marks an Unknown verdict"""

    payload: Dict[str, Any]
    unknown: bool = False
    tsv: Optional[str] = None


def _int_param(config: Config, name: str, default: Any = ...) -> int:
    value = config.param(name, default)
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"Parameter '{name}' must be an integer, got {value!r}")
    return value


def _rational_param(config: Config, name: str, default: Any = ...) -> Fraction:
    return parse_rational(config.param(name, default))


def verdict_to_dict(verdict: Verdict) -> Dict[str, Any]:
    return {
        "kind": verdict.kind.value,
        "label": verdict.label(),
        "reason": verdict.reason.value if verdict.reason else None,
        "certificate": verdict.certificate,
        "level": format_rational(verdict.level) if verdict.level is not None else None,
        "iterations": verdict.iterations,
    }


def bound_to_dict(bound: RadiusBound) -> Dict[str, Any]:
    return {
        "lower": format_rational(bound.lower),
        "upper": format_rational(bound.upper),
        "exact": bound.is_exact,
    }


class CommandExecutor:
    """Dispatches subcommands to the library"""

    @staticmethod
    def names() -> List[str]:
        return sorted(COMMANDS)

    @staticmethod
    def execute(name: str, config: Config, settings: Settings, seed: int = 0) -> CommandResult:
        """Run a named command on a validated document

        Args:
            name: Subcommand name
            config: Loaded problem document
            settings: Defaults merged with command-line overrides
            seed: Seed for randomized test vectors

        Returns:
            The command's result

        Raises:
            InputError: If the command is unknown or a parameter is malformed
            DomainError: If a library precondition fails
            InternalError: If the numeric core fails unexpectedly
        """
        try:
            handler: Callable[..., CommandResult] = COMMANDS[name]
        except KeyError:
            raise InputError(f"Unknown command '{name}'")
        logger.debug("running %s with p=%d", name, config.p)
        try:
            return handler(config, settings, seed)
        except (ArithmeticError, RuntimeError) as e:
            raise InternalError(f"{name}: {type(e).__name__}: {e}") from e

    @staticmethod
    def eval(config: Config, settings: Settings, seed: int) -> CommandResult:
        lam = _rational_param(config, "lambda")
        return CommandResult({"lambda": lam, "value": eval_at(config.newton(), lam)})

    @staticmethod
    def dominant(config: Config, settings: Settings, seed: int) -> CommandResult:
        nd = config.newton()
        interval = config.annulus().interval
        degree = dominant_degree(nd, interval)
        if not SamplingDominanceOracle().agrees(degree, nd, interval):
            raise InconsistentVerdict(f"Dominance of {nd.terms} on {interval} failed its check")
        payload: Dict[str, Any] = {
            "degree": degree,
            "invertible": degree is not None,
            "coordinate": is_coordinate(nd, interval),
        }
        if degree is not None:
            _, c0, u = normalize(nd, interval)
            payload["constant"] = c0
            payload["unit"] = newton_to_list(u) if u is not None else []
            if degree != 0:
                image, map_degree = image_interval(nd, interval)
                payload["image"] = interval_to_dict(image)
                payload["map_degree"] = map_degree
        return CommandResult(payload)

    @staticmethod
    def fibers(config: Config, settings: Settings, seed: int) -> CommandResult:
        p = config.p
        h = _int_param(config, "h")
        m = _rational_param(config, "m")
        r = _rational_param(config, "r")
        j = config.param("j", None)
        payload: Dict[str, Any] = {"h": h, "m": m, "r": r}
        if j is not None:
            payload["j"] = _int_param(config, "j")
            payload["count"] = power_fiber_count(p, h, payload["j"], m, r)
            return CommandResult(payload)
        count = fiber_count(p, h, m, r)
        if fiber_count_recursive(p, h, m, r) != count:
            raise InconsistentVerdict(f"Fiber count over ({m}, {r}) disagrees with the tower")
        payload["count"] = count
        return CommandResult(payload)

    @staticmethod
    def fiber_tree(config: Config, settings: Settings, seed: int) -> CommandResult:
        h = _int_param(config, "h")
        m = _rational_param(config, "m")
        radii = config.param("radii")
        if not isinstance(radii, list) or not radii:
            raise InputError("Parameter 'radii' must be a non-empty list")
        rows = fiber_tree(config.p, h, m, [parse_rational(r) for r in radii])
        lines = ["radius\tcount"]
        lines.extend(f"{format_rational(row.radius)}\t{row.count}" for row in rows)
        payload = {"h": h, "m": m, "rows": rows}
        return CommandResult(payload, tsv="\n".join(lines) + "\n")

    @staticmethod
    def push(config: Config, settings: Settings, seed: int) -> CommandResult:
        point = TrunkPoint(
            _rational_param(config, "center_mag"),
            _rational_param(config, "radius"),
            str(config.param("tag", "z0")),
        )
        return CommandResult({"point": point, "image": push_p(point, config.p)})

    @staticmethod
    def harm(config: Config, settings: Settings, seed: int) -> CommandResult:
        graph = config.semigraph()
        n = _int_param(config, "n", config.p)
        structure = harm_group(graph, n)
        checked = n ** len(graph.edges) <= MAX_LABELINGS
        if checked and not HarmEnumerationOracle().agrees(structure, graph, n):
            raise InconsistentVerdict(f"Harm(G, Z/{n}Z) disagrees with enumeration")
        return CommandResult(
            {
                "n": n,
                "invariant_factors": list(structure.invariant_factors),
                "order": structure.order(),
                "generators": [g.as_dict() for g in structure.generators],
                "enumeration_checked": checked,
            }
        )

    @staticmethod
    def theta(config: Config, settings: Settings, seed: int) -> CommandResult:
        graph = config.semigraph()
        n = _int_param(config, "n", config.p)
        degrees = config.param("degrees")
        if not isinstance(degrees, dict) or not all(
            isinstance(v, int) and not isinstance(v, bool) for v in degrees.values()
        ):
            raise InputError("Parameter 'degrees' must map edge names to integers")
        cochain, harmonic = theta_assemble(graph, degrees, n)
        return CommandResult({"n": n, "cochain": cochain.as_dict(), "harmonic": harmonic})

    @staticmethod
    def bridge(config: Config, settings: Settings, seed: int) -> CommandResult:
        graph = config.semigraph()
        edge = str(config.param("edge"))
        n = _int_param(config, "n", config.p)
        bridge = is_bridge(graph, edge)
        surjective = None
        if edge in truncate(graph).edge_names():
            surjective = eval_surjective(graph, n, edge)
        return CommandResult(
            {"edge": edge, "n": n, "bridge": bridge, "eval_surjective": surjective}
        )

    @staticmethod
    def split_locus(config: Config, settings: Settings, seed: int) -> CommandResult:
        nd = config.newton()
        interval = config.annulus().interval
        i0, c0, u = normalize(nd, interval)
        locus = interval if u is None else split_locus(u, interval, config.p)
        return CommandResult(
            {
                "dominant": i0,
                "constant": c0,
                "unit": newton_to_list(u) if u is not None else [],
                "locus": interval_to_dict(locus),
            }
        )

    @staticmethod
    def split_verdict(config: Config, settings: Settings, seed: int) -> CommandResult:
        lam = _rational_param(config, "lambda")
        verdict = split_verdict_at(config.torsor_class(), lam, settings.max_iter)
        if not ResidueRootSearchOracle().agrees(verdict, config.p):
            raise InconsistentVerdict(f"The residue certificate at λ={lam} has a p-th root")
        return CommandResult(
            {"lambda": lam, "verdict": verdict_to_dict(verdict)}, unknown=verdict.is_unknown
        )

    @staticmethod
    def split_radius(config: Config, settings: Settings, seed: int) -> CommandResult:
        if config.param("suite", None) is not None:
            return CommandExecutor._radius_suite(config, settings, seed)
        alpha_doc = config.param("alpha")
        if not isinstance(alpha_doc, dict) or "m" not in alpha_doc:
            raise InputError("Parameter 'alpha' must be an object with 'm'")
        unit = alpha_doc.get("unit", 1)
        if isinstance(unit, bool) or not isinstance(unit, int):
            raise InputError(f"alpha.unit must be an integer, got {unit!r}")
        alpha = RigidPoint.at_magnitude(config.p, parse_rational(alpha_doc["m"]), unit)
        bound = split_radius_rigid(
            config.torsor_class(), alpha, settings.i_max, settings.max_iter
        )
        return CommandResult(
            {"alpha": {"m": alpha.m, "unit": unit}, "radius": bound_to_dict(bound)}
        )

    @staticmethod
    def _radius_suite(config: Config, settings: Settings, seed: int) -> CommandResult:
        p = config.p
        suite = config.param("suite")
        count = suite.get("count", DEFAULT_SUITE_SIZE) if isinstance(suite, dict) else suite
        if isinstance(count, bool) or not isinstance(count, int) or count < 1:
            raise InputError(f"Suite size must be a positive integer, got {count!r}")
        tau = Thresholds.for_prime(p).tau
        recentering = RecenteringOracle(2 * settings.i_max)
        root_search = ResidueRootSearchOracle()
        rows = []
        failures = contradictions = unknown = 0
        for index, sample in enumerate(random_class_suite(p, count, seed)):
            m = sample.point.m
            bound = split_radius_rigid(
                sample.torsor, sample.point, settings.i_max, settings.max_iter
            )
            if sample.dominant % p:
                dichotomy = bound.value == m + tau
            else:
                dichotomy = bound.lower > m + tau
            agrees = True
            for rho in range(int(m) - 4, int(m)):
                verdict = segment_verdict(
                    sample.torsor, sample.point, rho, settings.i_max, settings.max_iter
                )
                unknown += verdict.is_unknown
                agrees &= recentering.agrees(verdict, sample.torsor, sample.point, rho)
                agrees &= root_search.agrees(verdict, p)
            failures += not dichotomy
            contradictions += not agrees
            rows.append(
                {
                    "index": index,
                    "dominant": sample.dominant,
                    "radius": bound_to_dict(bound),
                    "dichotomy": dichotomy,
                    "oracles_agree": agrees,
                }
            )
        if failures or contradictions:
            logger.warning(
                "p=%d: %d dichotomy failures, %d oracle contradictions",
                p, failures, contradictions,
            )
        return CommandResult(
            {
                "seed": seed,
                "count": count,
                "rows": rows,
                "dichotomy_failures": failures,
                "oracle_contradictions": contradictions,
                "unknown_probes": unknown,
            }
        )

    @staticmethod
    def annulus_iso(config: Config, settings: Settings, seed: int) -> CommandResult:
        annulus = config.annulus()
        try:
            other = annulus_from_model(AnnulusModel.model_validate(config.param("other")))
        except ValidationError as e:
            raise InputError(f"Invalid parameter 'other': {e.errors()[0]['msg']}")
        return CommandResult(
            {
                "isomorphic": is_isomorphic(annulus, other),
                "length": length(annulus),
                "other_length": length(other),
            }
        )

    @staticmethod
    def length_localize(config: Config, settings: Settings, seed: int) -> CommandResult:
        p = config.p
        ell = parse_logmag(config.param("length"))
        profile = profile_direct(ell, p, settings.n_max)
        if ell != POS_INF and (
            profile_from_torsors(Annulus.open(-ell, 0), p, settings.n_max) != profile
        ):
            raise InconsistentVerdict(f"Torsor profile of length {ell} disagrees")
        box = localize(profile)
        return CommandResult(
            {
                "length": ell,
                "n_max": settings.n_max,
                "profile": {str(n): passed for n, passed in profile.passed},
                "interval": {
                    "lo": box.lo,
                    "hi": box.hi,
                    "lo_closed": False,
                    "hi_closed": box.hi != POS_INF,
                },
                "saturated": box.saturated,
            }
        )

    @staticmethod
    def thm1_sweep(config: Config, settings: Settings, seed: int) -> CommandResult:
        grid = length_grid(
            _rational_param(config, "step", "1/8"), _rational_param(config, "max", 20)
        )
        primes = config.param("primes", [2, 3, 5])
        if not isinstance(primes, list) or not primes:
            raise InputError("Parameter 'primes' must be a non-empty list")
        result = thm1_sweep(grid, primes, settings.n_max)
        return CommandResult(
            {
                "n_max": settings.n_max,
                "rows": result.rows,
                "findings": result.findings,
                "violations": result.violations,
                "torsor_mismatches": result.torsor_mismatches,
                "localization_failures": result.localization_failures,
                "ok": result.ok,
            }
        )

    @staticmethod
    def witness_solvable(config: Config, settings: Settings, seed: int) -> CommandResult:
        kind = config.param("kind")
        if kind == "skeleton":
            witness = witness_skeleton_solvable(
                _rational_param(config, "lambda"),
                config.p,
                _rational_param(config, "delta", "1/2"),
            )
            return CommandResult({"kind": kind, "witness": witness})
        if kind != "threshold":
            raise InputError(f"Parameter 'kind' must be 'threshold' or 'skeleton', got {kind!r}")
        alpha = RigidPoint.at_magnitude(
            config.p, _rational_param(config, "m"), _int_param(config, "unit", 1)
        )
        witness = witness_threshold_solvable(
            config.annulus(), alpha, config.semigraph(), str(config.param("edge"))
        )
        return CommandResult(
            {
                "kind": kind,
                "cochain": witness.cochain.as_dict(),
                "point": witness.point,
                "radius": bound_to_dict(witness.radius),
                "checks": [
                    {
                        "radius": check.radius,
                        "verdict": verdict_to_dict(check.verdict),
                        "count": check.count,
                        "consistent": check.consistent,
                    }
                    for check in witness.checks
                ],
            },
            unknown=any(check.verdict.is_unknown for check in witness.checks),
        )


COMMANDS: Dict[str, Callable[..., CommandResult]] = {
    "eval": CommandExecutor.eval,
    "dominant": CommandExecutor.dominant,
    "fibers": CommandExecutor.fibers,
    "fiber-tree": CommandExecutor.fiber_tree,
    "push": CommandExecutor.push,
    "harm": CommandExecutor.harm,
    "theta": CommandExecutor.theta,
    "bridge": CommandExecutor.bridge,
    "split-locus": CommandExecutor.split_locus,
    "split-verdict": CommandExecutor.split_verdict,
    "split-radius": CommandExecutor.split_radius,
    "annulus-iso": CommandExecutor.annulus_iso,
    "length-localize": CommandExecutor.length_localize,
    "thm1-sweep": CommandExecutor.thm1_sweep,
    "witness-solvable": CommandExecutor.witness_solvable,
}


def render(name: str, p: int, result: CommandResult) -> Dict[str, Any]:
    """The output document of a command"""
    return to_jsonable({"command": name, "p": p, "result": result.payload})
