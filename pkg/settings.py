import json
import os
from dataclasses import dataclass
from pathlib import Path

CONFIG_DIR = Path.home() / ".config" / "qcox"
CONFIG_FILE = CONFIG_DIR / "settings.json"

DEFAULT_ORBIT_CAP = 10**6
DEFAULT_CLOSURE_CAP = 10**6
DEFAULT_DEPTH_CAP = 12
FORMATS = ("json", "csv", "text")

DEFAULT_SETTINGS = {
    "orbit_cap": DEFAULT_ORBIT_CAP,
    "closure_cap": DEFAULT_CLOSURE_CAP,
    "depth_cap": DEFAULT_DEPTH_CAP,
    "format": "json",
    "jobs": 1,
    "seed": 0,
    "log_level": "WARNING",
}


class SettingsError(ValueError):
    """Raised when a run configuration value is out of range"""


def load_settings():
    """Load settings from JSON file, merged over the defaults"""
    settings = dict(DEFAULT_SETTINGS)
    if CONFIG_FILE.exists():
        try:
            with open(CONFIG_FILE, "r") as f:
                stored = json.load(f)
            if isinstance(stored, dict):
                settings.update({k: v for k, v in stored.items() if k in DEFAULT_SETTINGS})
        except (json.JSONDecodeError, IOError):
            pass
    return settings


def save_settings(settings: dict):
    """Save settings to JSON file"""
    CONFIG_DIR.mkdir(parents=True, exist_ok=True)
    with open(CONFIG_FILE, "w") as f:
        json.dump(settings, f, indent=4)


# -------------------------------
# Run configuration
# -------------------------------
@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    element: str = None
    orbit_cap: int = DEFAULT_ORBIT_CAP
    closure_cap: int = DEFAULT_CLOSURE_CAP
    depth_cap: int = DEFAULT_DEPTH_CAP
    format: str = "json"
    jobs: int = 1
    seed: int = 0
    route: str = "both"
    log_level: str = "WARNING"

    def __post_init__(self):
        for name in ("orbit_cap", "closure_cap", "depth_cap", "jobs"):
            if getattr(self, name) < 1:
                raise SettingsError(f"{name.replace('_', '-')} must be positive")
        if self.format not in FORMATS:
            raise SettingsError(f"format must be one of {', '.join(FORMATS)}")


def _env_jobs():
    value = os.environ.get("QCOX_JOBS")
    if not value:
        return None
    try:
        return int(value)
    except ValueError:
        raise SettingsError(f"QCOX_JOBS must be an integer, got {value!r}")


def build_run_config(args):
    """CLI flag > QCOX_JOBS > settings file > default"""
    settings = load_settings()

    def pick(name, env=None):
        flag = getattr(args, name, None)
        if flag is not None:
            return flag
        if env is not None:
            return env
        return settings[name]

    return RunConfig(
        subcommand=args.command,
        element=getattr(args, "element", None),
        orbit_cap=pick("orbit_cap"),
        closure_cap=pick("closure_cap"),
        depth_cap=pick("depth_cap"),
        format=pick("format"),
        jobs=pick("jobs", _env_jobs()),
        seed=pick("seed"),
        route=getattr(args, "route", None) or "both",
        log_level="DEBUG" if getattr(args, "verbose", False) else pick("log_level"),
    )
