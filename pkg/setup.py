import os
import setuptools

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

if version := os.environ.get("RELEASE_VERSION"):
    setuptools.setup(
        name="secbif",
        version=version,
        description="Bifurcation analysis of integrable secular three-body models in Hopf variables",
        long_description=long_description,
        long_description_content_type="text/markdown",
        packages=setuptools.find_packages(exclude=["tests", "tests.*"]),
        python_requires=">=3.10",
        install_requires=[
            "numpy>=1.24",
            "scipy>=1.10",
            "sympy>=1.12",
            "matplotlib>=3.7",
        ],
        entry_points={
            "console_scripts": [
                "secbif=secbif.cli:main",
            ],
        },
    )
else:
    raise RuntimeError("RELEASE_VERSION environment variable is not set")
