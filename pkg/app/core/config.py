import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()


class Settings:
    # Verification windows
    MAX_HDEG: int = int(os.getenv("SJP_MAX_HDEG", "6"))
    WEIGHT_WINDOW: int = int(os.getenv("SJP_WEIGHT_WINDOW", "12"))
    MAX_INDEX: int = int(os.getenv("SJP_MAX_INDEX", "3"))
    MAX_PQ: int = int(os.getenv("SJP_MAX_PQ", "2"))
    MAX_M: int = int(os.getenv("SJP_MAX_M", "6"))
    MAX_YONEDA_DEGREE: int = int(os.getenv("SJP_MAX_YONEDA_DEGREE", "12"))

    # Bar complex oracle
    ORACLE_MAX_HDEG: int = int(os.getenv("SJP_ORACLE_MAX_HDEG", "3"))
    ORACLE_MAX_WEIGHT: int = int(os.getenv("SJP_ORACLE_MAX_WEIGHT", "8"))
    ORACLE_MAX_COLUMNS: int = int(os.getenv("SJP_ORACLE_MAX_COLUMNS", "6000"))
    ORACLE_HOMOLOGY_MAX_HDEG: int = int(os.getenv("SJP_ORACLE_HOMOLOGY_MAX_HDEG", "2"))
    ORACLE_HOMOLOGY_MAX_WEIGHT: int = int(os.getenv("SJP_ORACLE_HOMOLOGY_MAX_WEIGHT", "6"))

    # Execution settings
    WORKERS: int = int(os.getenv("SJP_WORKERS", "4"))
    LOG_LEVEL: str = os.getenv("SJP_LOG_LEVEL", "INFO")
    OUTPUT_FORMAT: str = os.getenv("SJP_OUTPUT_FORMAT", "json")


# Create global settings object
settings = Settings()
