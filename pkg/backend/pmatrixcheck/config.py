import os
import re
import yaml
from dotenv import load_dotenv
from pathlib import Path
from typing import Any, Dict
import logging

# Load environment variables
load_dotenv()

logger = logging.getLogger(__name__)

CONFIG_DIR = Path(__file__).parent.parent.parent / "config"


class Config:
    def __init__(self, config_dir: Path = CONFIG_DIR):
        # Environment-specific config first (ENV=production → config.production.yaml)
        env = os.getenv("ENV", "development")
        config_path = config_dir / f"config.{env}.yaml"

        if not config_path.exists():
            logger.debug(
                f"Environment-specific config not found: {config_path}, using default config.yaml"
            )
            config_path = config_dir / "config.yaml"
        else:
            logger.debug(f"Loading environment-specific config: {config_path}")

        if config_path.exists():
            with open(config_path, "r", encoding="utf-8") as f:
                self.yaml_config = yaml.safe_load(f) or {}
        else:
            logger.warning(f"No configuration found in {config_dir}, using defaults")
            self.yaml_config = self._get_default_config()

        self.performance_config = self.yaml_config.get(
            "performance", self._get_default_performance_config()
        )

        # Pattern for environment variable substitution
        self._env_pattern = re.compile(r"\$\{([^}]+)\}")

        self.yaml_config = self._process_env_vars(self.yaml_config)
        self.performance_config = self._process_env_vars(self.performance_config)

        self.validate()

    def _process_env_vars(self, config: Any) -> Any:
        """Recursively process environment variables in configuration"""
        if isinstance(config, dict):
            return {k: self._process_env_vars(v) for k, v in config.items()}
        elif isinstance(config, list):
            return [self._process_env_vars(item) for item in config]
        elif isinstance(config, str):
            # Replace ${VAR_NAME} or ${VAR_NAME:-default} with environment variable value
            def replace_env_var(match):
                var_expr = match.group(1)
                if ":-" in var_expr:
                    var_name, default_value = var_expr.split(":-", 1)
                    value = os.getenv(var_name.strip())
                    if value is None:
                        return default_value
                else:
                    value = os.getenv(var_expr.strip())
                    if value is None:
                        # Leave unresolved expressions untouched
                        return match.group(0)
                return value

            return self._env_pattern.sub(replace_env_var, config)
        else:
            return config

    def get(self, key_path: str, default: Any = None) -> Any:
        """
        Get configuration value using dot notation

        Searches the main config first, then the performance config.

        Args:
            key_path: Dot-separated path to configuration value (e.g., 'pipeline.max_n')
            default: Default value if key not found

        Returns:
            Configuration value or default
        """
        keys = key_path.split(".")

        value = self.yaml_config
        for key in keys:
            if isinstance(value, dict) and key in value:
                value = value[key]
            else:
                value = None
                break

        if value is not None:
            return value

        return self.get_performance(key_path, default)

    def get_performance(self, key_path: str, default: Any = None) -> Any:
        """
        Get performance configuration value using dot notation

        Args:
            key_path: Dot-separated path to configuration value
            default: Default value if key not found

        Returns:
            Configuration value or default
        """
        keys = key_path.split(".")
        value = self.performance_config

        for key in keys:
            if isinstance(value, dict) and key in value:
                value = value[key]
            else:
                return default

        return value

    @property
    def ENVIRONMENT(self) -> str:
        return self.get("app.environment", "development")

    # Pipeline settings
    @property
    def PIPELINE_MAX_N(self) -> int:
        # PMATRIX_MAX_N wins over the YAML value
        raw = os.getenv("PMATRIX_MAX_N", str(self.get("pipeline.max_n", 3))).strip()
        try:
            return int(raw)
        except ValueError:
            return int(self.get("pipeline.max_n", 3))

    @property
    def DEFAULT_SEED(self) -> int:
        return int(self.get("suites.seed", 0))

    @property
    def SUITE_COUNTS(self) -> Dict[str, int]:
        counts = self.get("suites.counts", {}) or {}
        return {name: int(count) for name, count in counts.items()}

    # Sweep executor settings
    @property
    def SWEEP_MAX_WORKERS(self) -> int:
        raw = os.getenv(
            "SWEEP_MAX_WORKERS", str(self.get_performance("sweeps.max_workers", 1))
        ).strip()
        try:
            return max(1, int(raw))
        except ValueError:
            return 1

    @property
    def SWEEP_WORKER_TYPE(self) -> str:
        return self.get_performance("sweeps.worker_type", "process")

    @property
    def SWEEP_MIN_PARALLEL_SIZE(self) -> int:
        return int(self.get_performance("sweeps.min_parallel_size", 4096))

    @property
    def SWEEP_CHUNK_SIZE(self) -> int:
        return max(1, int(self.get_performance("sweeps.chunk_size", 1024)))

    def _get_default_config(self) -> Dict[str, Any]:
        """Configuration used when no YAML file can be found"""
        return {
            "app": {"name": "pmatrixcheck", "environment": "development"},
            "pipeline": {"max_n": 3},
            "suites": {"seed": 0, "counts": {}},
            "performance": self._get_default_performance_config(),
        }

    def _get_default_performance_config(self) -> Dict[str, Any]:
        """Get default performance configuration"""
        return {
            "sweeps": {
                "max_workers": 1,
                "worker_type": "process",
                "min_parallel_size": 4096,
                "chunk_size": 1024,
            },
        }

    def validate(self):
        """Validate required configuration"""
        required_sections = ["app", "pipeline", "performance"]
        for section in required_sections:
            if section not in self.yaml_config:
                raise ValueError(f"Missing required section '{section}' in config.yaml")

        worker_type = self.SWEEP_WORKER_TYPE
        if worker_type not in ("thread", "process"):
            raise ValueError(
                f"performance.sweeps.worker_type must be 'thread' or 'process', got {worker_type!r}"
            )

        return True


# Create a singleton instance
config = Config()
