import copy
import json
import os
from typing import Dict, List, Any, Optional

from dotenv import load_dotenv

from utils.logger import get_logger


class ConfigManager:
    """
    Manager class for reading configuration from a JSON file.
    Provides access to the scheduler, simulation, Gantt and service settings
    through dedicated getters. Command-line flags take precedence over these values.
    """

    def __init__(self, config_path: Optional[str] = None):
        """
        Initialize the ConfigManager

        Args:
            config_path: Path to the config file. When omitted, FPPN_CONFIG,
                config.json and config_example.json are tried in that order.
        """
        load_dotenv()
        self.logger = get_logger("ConfigManager")
        self.config_path = config_path or os.getenv("FPPN_CONFIG") or "config.json"
        self.config = self._parse_config_file()

    def _get_default_config(self) -> Dict[str, Any]:
        """
        Get default configuration

        This configuration is used if no configuration file is found
        """
        return {
            "system": {
                "logLevel": "INFO",
                "apiKey": "",
                "cors": ["*"]
            },
            "scheduler": {
                "delta_us": 0,
                "cores": 1,
                "max_cores": 8
            },
            "simulation": {
                "determinism_runs": 100,
                "seed": 0
            },
            "gantt": {
                "px_per_ms": 10,
                "lane_height": 28,
                "palette": [
                    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2",
                    "#59a14f", "#edc948", "#b07aa1", "#ff9da7"
                ]
            },
            "service": {
                "host": "127.0.0.1",
                "port": 8000
            }
        }

    def _log_config_summary(self) -> None:
        """
        Log a summary of the current configuration
        """
        self.logger.info("Configuration Summary:")
        self.logger.info(f"  Log Level: {self.get_log_level()}")
        self.logger.info(f"  Default delta: {self.get_default_delta_us()}us")
        self.logger.info(f"  Default cores: {self.get_default_cores()}")
        self.logger.info(f"  Max cores: {self.get_max_cores()}")
        self.logger.info(f"  Service: {self.get_service_host()}:{self.get_service_port()}")

    def reload(self) -> None:
        """Reload configuration from disk"""
        self.logger.info("Reloading configuration")
        self.config = self._parse_config_file()
        self._log_config_summary()

    def _parse_config_file(self) -> Dict[str, Any]:
        """
        Parse the configuration file and return its contents.
        Falls back to config_example.json, then to built-in defaults.

        Returns:
            Dictionary containing the configuration

        Raises:
            ValueError: If the selected file is not valid JSON
        """
        path = self.config_path
        if not os.path.exists(path):
            example_config_path = "config_example.json"
            if os.path.exists(example_config_path):
                self.logger.debug(f"Config file not found: {path}, reading {example_config_path}")
                path = example_config_path
            else:
                self.logger.debug(f"No config file found, using defaults")
                return self._get_default_config()

        try:
            with open(path, 'r', encoding='utf-8') as file:
                loaded = json.load(file)
        except json.JSONDecodeError as e:
            self.logger.error(f"JSON parsing error in {path} at line {e.lineno}, column {e.colno}: {e.msg}")
            raise ValueError(f"Invalid JSON in config file {path}: {e.msg}")

        # Missing sections inherit the defaults
        merged = self._get_default_config()
        for section, values in loaded.items():
            if isinstance(values, dict) and isinstance(merged.get(section), dict):
                merged[section].update(values)
            else:
                merged[section] = values
        return merged

    def load_config(self) -> Dict[str, Any]:
        """
        Load configuration from the config file

        Returns:
            Dictionary containing the configuration
        """
        self.config = self._parse_config_file()
        self.logger.info(f"Configuration loaded from {self.config_path}")
        return self.config

    def save_config(self, config: Dict[str, Any]) -> None:
        """
        Save configuration to the config file

        Args:
            config: Configuration dictionary to save
        """
        with open(self.config_path, 'w', encoding='utf-8') as file:
            json.dump(config, file, indent=2, ensure_ascii=False)
        self.config = config
        self.logger.info(f"Configuration saved to {self.config_path}")

    def get_system_config(self) -> Dict[str, Any]:
        """Get the system configuration"""
        return self.config.get("system", {})

    def get_log_level(self) -> str:
        """Get the logging level"""
        return self.get_system_config().get("logLevel", "INFO")

    def get_system_api_key(self) -> str:
        """Get the service API key (empty disables the check)"""
        return self.get_system_config().get("apiKey", "")

    def get_cors_origins(self) -> List[str]:
        """Get the CORS allowed origins"""
        return self.get_system_config().get("cors", ["*"])

    def get_scheduler_config(self) -> Dict[str, Any]:
        """Get the scheduler section"""
        return self.config.get("scheduler", {})

    def get_default_delta_us(self) -> int:
        """Engine transition cost used when --delta is not given"""
        return int(self.get_scheduler_config().get("delta_us", 0))

    def get_default_cores(self) -> int:
        """Core count used when --cores is not given"""
        return int(self.get_scheduler_config().get("cores", 1))

    def get_max_cores(self) -> int:
        """Upper bound of the minimum-core search"""
        return int(self.get_scheduler_config().get("max_cores", 8))

    def get_simulation_config(self) -> Dict[str, Any]:
        """Get the simulation section"""
        return self.config.get("simulation", {})

    def get_determinism_runs(self) -> int:
        """Number of randomized tables used by determinism checks"""
        return int(self.get_simulation_config().get("determinism_runs", 100))

    def get_seed(self) -> int:
        """Seed for randomized tie-breaking"""
        return int(self.get_simulation_config().get("seed", 0))

    def get_gantt_config(self) -> Dict[str, Any]:
        """Get Gantt rendering settings"""
        defaults = self._get_default_config()["gantt"]
        settings = copy.deepcopy(defaults)
        settings.update(self.config.get("gantt", {}))
        return settings

    def get_service_host(self) -> str:
        """Get the HTTP service bind address"""
        return self.config.get("service", {}).get("host", "127.0.0.1")

    def get_service_port(self) -> int:
        """Get the HTTP service port"""
        return int(self.config.get("service", {}).get("port", 8000))
