"""
Loading, overriding and serialising run configurations.
"""
import copy
import json

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Tuple

import structlog
from pydantic import ValidationError

from mrsav_gfd.errors import ConfigurationError
from mrsav_gfd.models.run_config import RunConfig

logger = structlog.get_logger(__name__)

FULL_PROFILE_TARGETS = {
    "modes": "grid.modes",
    "duration": "run.duration",
    "k": "stepper.k",
}


def load_document(path: Path) -> Dict[str, Any]:
    """
    Read a TOML or JSON config file into a plain dictionary.

    Args:
        path: Config file; the suffix selects the parser

    Returns:
        The parsed document
    """
    path = Path(path)
    if not path.exists():
        raise ConfigurationError(f"config file {path} does not exist")
    try:
        if path.suffix == ".toml":
            with open(path, "rb") as f:
                return tomllib.load(f)
        if path.suffix == ".json":
            with open(path) as f:
                return json.load(f)
    except (tomllib.TOMLDecodeError, json.JSONDecodeError) as error:
        raise ConfigurationError(f"{path}: {error}") from error
    raise ConfigurationError(f"unsupported config format {path.suffix!r}, expected .toml or .json")


def parse_override(text: str) -> Tuple[str, Any]:
    """
    Split a ``dotted.key=value`` override; the value is read as JSON when possible.

    Args:
        text: The override as given on the command line

    Returns:
        Key path and value
    """
    key, sep, raw = text.partition("=")
    if not sep or not key.strip():
        raise ConfigurationError(f"override {text!r} is not of the form key.path=value")
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    return key.strip(), value


def apply_overrides(document: Mapping[str, Any], overrides: Mapping[str, Any]) -> Dict[str, Any]:
    """Return a copy of the document with dotted key paths set."""
    result = copy.deepcopy(dict(document))
    for key_path, value in overrides.items():
        node = result
        parts = key_path.split(".")
        for part in parts[:-1]:
            child = node.setdefault(part, {})
            if not isinstance(child, dict):
                raise ConfigurationError(f"cannot set {key_path}: {part} is not a section", key_path=key_path)
            node = child
        node[parts[-1]] = value
    return result


def apply_full_profile(document: Mapping[str, Any]) -> Dict[str, Any]:
    """Apply the ``full_profile`` section on top of the regular values."""
    profile = document.get("full_profile")
    if not profile:
        raise ConfigurationError("--full requested but the config has no full_profile section", key_path="full_profile")
    overrides = {FULL_PROFILE_TARGETS[key]: value for key, value in profile.items() if key in FULL_PROFILE_TARGETS}
    logger.info("full profile applied", **overrides)
    return apply_overrides(document, overrides)


def build_config(document: Mapping[str, Any]) -> RunConfig:
    """
    Validate a document into a RunConfig.

    Raises:
        ConfigurationError: With the key path of the first offending entry
    """
    try:
        return RunConfig.model_validate(document)
    except ValidationError as error:
        details = error.errors()
        first = details[0]
        key_path = ".".join(str(part) for part in first["loc"]) or None
        summary = "; ".join(
            f"{'.'.join(str(p) for p in d['loc']) or '<root>'}: {d['msg']}" for d in details
        )
        problem = ConfigurationError(summary)
        problem.key_path = key_path
        raise problem from error


def parse_config(
    path: Optional[Path] = None,
    overrides: Optional[Mapping[str, Any]] = None,
    full: bool = False,
) -> RunConfig:
    """
    Load a config file, apply ``--full`` and CLI overrides, and validate.

    Args:
        path: TOML or JSON file; None starts from an empty document
        overrides: Dotted key paths and values, applied last
        full: Apply the file's full_profile section

    Returns:
        The validated RunConfig
    """
    document: Dict[str, Any] = load_document(path) if path is not None else {}
    if full:
        document = apply_full_profile(document)
    if overrides:
        document = apply_overrides(document, overrides)
    return build_config(document)


def dump_config(config: RunConfig, path: Path) -> Path:
    """Write a RunConfig as JSON; parse_config reads it back to an equal config."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(config.model_dump(mode="json", exclude_none=True), indent=2) + "\n")
    return path
