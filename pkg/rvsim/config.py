import os
from pathlib import Path
from dotenv import load_dotenv

from .core.errors import ConfigurationError

# config.py находится в rvsim/config.py, .env в корне проекта
PROJECT_ROOT = Path(__file__).resolve().parent.parent
ENV_FILE = PROJECT_ROOT / ".env"

load_dotenv(dotenv_path=ENV_FILE)


# Переменные RVSIM_* с неверными значениями; проверяет check_settings()
SETTINGS_ERRORS: list[str] = []


def _env_int(name: str, default: str) -> int:
    """Read an integer setting; accepts 0x/0b prefixes. A malformed value is recorded and the default used."""
    raw = (os.getenv(name) or default).strip()
    try:
        return int(raw, 0)
    except ValueError:
        SETTINGS_ERRORS.append(f"{name}={raw!r} is not an integer")
        return int(default, 0)


def check_settings() -> None:
    """
    Raises:
        ConfigurationError: some RVSIM_* variable could not be parsed
    """
    if SETTINGS_ERRORS:
        raise ConfigurationError("invalid settings: " + "; ".join(SETTINGS_ERRORS))


# Значение PC после сброса (0100...0 на временных диаграммах стендов)
PC_RESET = _env_int("RVSIM_PC_RESET", "0x40000000")

# Карта памяти
IMEM_BASE = _env_int("RVSIM_IMEM_BASE", "0x40000000")
IMEM_SIZE = _env_int("RVSIM_IMEM_SIZE", "0x10000")
DMEM_BASE = _env_int("RVSIM_DMEM_BASE", "0x80000000")
DMEM_SIZE = _env_int("RVSIM_DMEM_SIZE", "0x10000")

# Лимит тактов для `run`, если не задан --max-cycles
MAX_CYCLES_RAW = _env_int("RVSIM_MAX_CYCLES", "100000")
MAX_CYCLES = max(1, MAX_CYCLES_RAW)

# Длительность такта ядра в трассе, нс
CYCLE_NS = _env_int("RVSIM_CYCLE_NS", "10")

LOG_LEVEL = os.getenv("RVSIM_LOG_LEVEL", "WARNING").strip().upper()

# Встроенные сценарии стендов (.bench + .s)
SCENARIOS_DIR = Path(os.getenv("RVSIM_SCENARIOS_DIR", "").strip() or Path(__file__).resolve().parent / "scenarios")
