from setuptools import find_packages, setup

setup(
    name="RCSP-Bounds",
    version="0.1.0",
    description=(
        "Certified bounds on joint decoding-error probabilities of "
        "rate-compatible sphere-packing feedback schemes"
    ),
    packages=find_packages(exclude=["tests", "tests.*"]),
    package_data={"rcsp": ["configs/*.yaml"]},
    python_requires=">=3.10",
    install_requires=[
        "numpy>=1.22",
        "scipy>=1.9",
        "pandas>=1.5",
        "pyyaml>=6.0.0",
    ],
    extras_require={
        "profiling": ["memray>=1.5.0"],
        "test": ["pytest>=7.0"],
    },
    entry_points={
        "console_scripts": [
            "rcsp=rcsp.cli.cmd:run_cmd",
        ]
    },
)
