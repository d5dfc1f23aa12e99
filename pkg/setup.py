#!/usr/bin/env python3
"""
Build script for PencilSpec
Packages main.py as a standalone console executable with PyInstaller.

    python setup.py              one-file build
    python setup.py --onedir     one-folder build (faster startup)
    python setup.py --test       run the test suite first, build only if it passes
"""

import subprocess
import sys

APP_NAME = "pencilspec"
PACKAGES = ("core", "tools", "utils")
# PyInstaller's import scan misses these when scipy is bundled
HIDDEN_IMPORTS = ("scipy.signal", "scipy.spatial.distance", "scipy.linalg")
OPTIONS = ("--onedir", "--test", "--help")


def banner(title):
    print("=" * 60)
    print(title)
    print("=" * 60)


def ensure_pyinstaller():
    """Import PyInstaller, installing it with pip when missing."""
    try:
        import PyInstaller
    except ImportError:
        print("PyInstaller not found, installing it...")
        subprocess.check_call([sys.executable, "-m", "pip", "install", "pyinstaller"])
        import PyInstaller
    print(f"✓ PyInstaller {PyInstaller.__version__}")


def run_tests():
    """Run pytest from the repository root; returns its exit status."""
    print("\nRunning the test suite...")
    return subprocess.call([sys.executable, "-m", "pytest", "-q"])


def pyinstaller_command(onedir=False):
    separator = ';' if sys.platform.startswith('win') else ':'
    cmd = ["pyinstaller", "--onedir" if onedir else "--onefile", "--console", f"--name={APP_NAME}", "--clean"]
    cmd += [f"--add-data={package}{separator}{package}" for package in PACKAGES]
    cmd += [f"--hidden-import={module}" for module in HIDDEN_IMPORTS]
    cmd.append("main.py")
    return cmd


def build_executable(onedir=False):
    """Build the executable; exits with status 1 on failure."""
    banner("PencilSpec - Build Script")
    ensure_pyinstaller()

    cmd = pyinstaller_command(onedir)
    print("\n" + " ".join(cmd))
    try:
        subprocess.check_call(cmd)
    except subprocess.CalledProcessError as e:
        print(f"\n✗ Build failed with error: {e}")
        sys.exit(1)
    except FileNotFoundError:
        print("\n✗ pyinstaller is not on PATH. Install it with: pip install pyinstaller")
        sys.exit(1)

    location = f"dist/{APP_NAME}/{APP_NAME}" if onedir else f"dist/{APP_NAME}"
    banner("Build successful!")
    print(f"Executable location: {location}")
    print(f"\nTry it:  {location} gallery intro_example --out intro")


def usage():
    print(__doc__.strip())


def main():
    """Main entry point."""
    args = sys.argv[1:]
    unknown = [arg for arg in args if arg not in OPTIONS]
    if unknown:
        print(f"Unknown option: {unknown[0]}")
        print("Use --help for usage information.")
        sys.exit(1)
    if "--help" in args:
        usage()
        return

    if "--test" in args and run_tests() != 0:
        print("\n✗ Tests failed; not building.")
        sys.exit(1)
    build_executable(onedir="--onedir" in args)


if __name__ == "__main__":
    main()
