"""
Driving the command line
========================

Every operation is available as a JSON-in, JSON-out command.
"""

import json
import subprocess
import sys


def run(command, payload, *flags):
    proc = subprocess.run([sys.executable, "-m", "partsym", command, *flags],
                          input=json.dumps(payload), capture_output=True, text=True)
    return proc.returncode, json.loads(proc.stdout)


print(run("compose", {"f": {"entries": [[1, 2]]}, "g": {"entries": [[0, 1]]}}))
status, window = run("encode", {"h": {"rules": [["0", "1"], ["1", "0"]]}}, "--depth", "1")
print(status, window)
print(run("decode", window["result"]))
print(run("census", {"depth": 2}))
