import json
import os
from dataclasses import dataclass
from typing import Any, Dict, Optional

from dotenv import find_dotenv, load_dotenv
from pydantic import ValidationError

from kummerlab.annuli import Annulus
from kummerlab.codec import laurent_from_terms, newton_from_terms, parse_interval
from kummerlab.cochains import SemiGraph
from kummerlab.errors import InputError
from kummerlab.newton import NewtonData
from kummerlab.residues import LaurentExt, to_newton
from kummerlab.schema import AnnulusModel, ProblemFile
from kummerlab.torsors.classes import TorsorClass

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def _positive_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}")
    if value < 1:
        raise ValueError(f"{name} must be positive, got {value}")
    return value


@dataclass(frozen=True)
class Settings:
    """Process-wide defaults, overridable from the command line"""

    n_max: int = 32
    max_iter: int = 8
    i_max: int = 8
    log_level: str = "WARNING"

    @classmethod
    def from_env(cls) -> "Settings":
        """Read KUMMERLAB_* variables, including any from a .env file

        Raises:
            ValueError: If a variable holds an invalid value
        """
        load_dotenv(find_dotenv(usecwd=True))
        level = os.getenv("KUMMERLAB_LOG_LEVEL", "WARNING").upper()
        if level not in LOG_LEVELS:
            raise ValueError(f"KUMMERLAB_LOG_LEVEL must be one of {LOG_LEVELS}, got {level!r}")
        return cls(
            n_max=_positive_int("KUMMERLAB_N_MAX", 32),
            max_iter=_positive_int("KUMMERLAB_MAX_ITER", 8),
            i_max=_positive_int("KUMMERLAB_I_MAX", 8),
            log_level=level,
        )


def annulus_from_model(model: AnnulusModel) -> Annulus:
    interval = parse_interval(model.lo, model.hi, model.lo_closed, model.hi_closed)
    return Annulus(interval, model.orientation)


class Config:
    """Problem document loader"""

    def __init__(
        self,
        config_path: Optional[str] = None,
        config_dict: Optional[Dict[str, Any]] = None,
        text: Optional[str] = None,
    ):
        """Initialize configuration

        Args:
            config_path: Path to a JSON problem document
            config_dict: Dictionary containing the document
            text: Raw JSON text of the document

        Raises:
            InputError: If the document cannot be read or fails validation
        """
        self.config: Dict[str, Any] = {}

        if config_dict is not None:
            self.config = config_dict
        elif config_path:
            self.load_from_file(config_path)
        elif text is not None:
            self.load_from_text(text)
        self.problem = self._validate(self.config)

    def load_from_file(self, path: str) -> None:
        """Load the document from file

        Raises:
            InputError: If file cannot be read or parsed
        """
        try:
            with open(path, "r", encoding="utf-8") as f:
                self.config = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise InputError(f"Error loading problem file: {str(e)}")

    def load_from_text(self, text: str) -> None:
        try:
            self.config = json.loads(text)
        except json.JSONDecodeError as e:
            raise InputError(f"Error parsing problem document: {str(e)}")

    @staticmethod
    def _validate(document: Any) -> ProblemFile:
        if not isinstance(document, dict):
            raise InputError("A problem document must be a JSON object")
        try:
            return ProblemFile.model_validate(document)
        except ValidationError as e:
            problems = "; ".join(
                f"{'.'.join(str(part) for part in error['loc']) or 'document'}: {error['msg']}"
                for error in e.errors()
            )
            raise InputError(f"Invalid problem document: {problems}")

    @property
    def p(self) -> int:
        return self.problem.p

    def annulus(self) -> Annulus:
        """Decoded annulus

        Raises:
            InputError: If the document has no annulus
        """
        if self.problem.annulus is None:
            raise InputError("This command needs an 'annulus'")
        return annulus_from_model(self.problem.annulus)

    def newton(self) -> NewtonData:
        """Newton data, taken from the laurent coefficients when only those are given"""
        if self.problem.newton is not None:
            return newton_from_terms(self.problem.newton)
        if self.problem.laurent is not None:
            return to_newton(self.laurent())
        raise InputError("This command needs 'newton' or 'laurent' data")

    def laurent(self) -> Optional[LaurentExt]:
        if self.problem.laurent is None:
            return None
        return laurent_from_terms(self.p, self.problem.laurent)

    def semigraph(self) -> SemiGraph:
        if self.problem.semigraph is None:
            raise InputError("This command needs a 'semigraph'")
        graph = self.problem.semigraph
        return SemiGraph.from_mapping(
            graph.vertices, {edge.name: (edge.tail, edge.head) for edge in graph.edges}
        )

    def torsor_class(self) -> TorsorClass:
        """μ_p class of the document's representative on its annulus

        The laurent coefficients win over newton data when both are present.
        """
        annulus = self.annulus()
        laurent = self.laurent()
        if laurent is not None:
            return TorsorClass.from_laurent(self.p, laurent, annulus)
        if self.problem.newton is None:
            raise InputError("This command needs 'newton' or 'laurent' data")
        return TorsorClass(self.p, newton_from_terms(self.problem.newton), annulus)

    def param(self, name: str, default: Any = ...) -> Any:
        """Command parameter from "params"

        Raises:
            InputError: If a parameter without default is missing
        """
        if name in self.problem.params:
            return self.problem.params[name]
        if default is ...:
            raise InputError(f"Missing parameter '{name}'")
        return default
