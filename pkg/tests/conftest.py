import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

# Populated at session start; lets tests emit progress lines past capture.
CAPMANAGER = None


def pytest_configure(config):
    global CAPMANAGER
    CAPMANAGER = config.pluginmanager.getplugin("capturemanager")
