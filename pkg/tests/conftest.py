import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

SESSION_START = time.monotonic()


def pytest_collection_modifyitems(items):
    # the acceptance tests time the whole suite, so they must run last
    items.sort(key=lambda item: item.fspath.basename == "test_acceptance.py")
