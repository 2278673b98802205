"""Two consecutive verify runs must print byte-identical JSON."""

import subprocess
import sys


def main():
    cli = sys.argv[1]
    args = [cli, "verify", "--no-timing", "--jobs", "1"]
    first = subprocess.run(args, capture_output=True, check=False)
    second = subprocess.run(args, capture_output=True, check=False)
    if first.returncode != 0 or second.returncode != 0:
        print("verify exited", first.returncode, second.returncode)
        return 1
    if first.stdout != second.stdout:
        print("outputs differ")
        return 1
    print(f"identical, {len(first.stdout)} bytes")
    return 0


if __name__ == "__main__":
    sys.exit(main())
