import logging
import sys

from src.api import cli
from src.config import settings

# Configure logging
logging.basicConfig(
    level=getattr(logging, settings.log_level.upper(), logging.INFO),
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
)
logger = logging.getLogger(__name__)


def main() -> int:
    logger.info("Starting claim verification...")
    return cli.run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
