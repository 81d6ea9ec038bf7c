from setuptools import find_packages, setup

with open("README.md", "r", encoding="utf8") as fh:
    LONG_DESCRIPTION = fh.read()

REQUIREMENTS = [
    "configsuite>=0.6",
    "jinja2>=2.10",
    "matplotlib>=3.1",
    "numpy>=1.17",
    "pandas>=1.0",
    "pyyaml>=5.2",
    "scipy>=1.6",
]

TEST_REQUIRES = [
    "black",
    "hypothesis>=5.0",
    "mypy>=0.761",
    "pylint>=2.3",
    "pytest>=5.3",
    "pytest-cov>=2.8",
    "sphinx",
    "sphinx-rtd-theme",
    "types-PyYAML",
]

setup(
    name="lptorsion",
    version="0.1.0",
    install_requires=REQUIREMENTS,
    tests_require=TEST_REQUIRES,
    python_requires=">=3.8",
    extras_require={"tests": TEST_REQUIRES},
    description="Torsion function L^p norms, Dirichlet eigenvalues and their sharp inequalities",
    long_description=LONG_DESCRIPTION,
    long_description_content_type="text/markdown",
    package_dir={"": "src"},
    packages=find_packages("src"),
    package_data={"lptorsion": ["templates/*", "static/*"]},
    entry_points={
        "console_scripts": [
            "lptorsion=lptorsion._command_line:main",
        ],
    },
    zip_safe=False,
    classifiers=[
        "Programming Language :: Python :: 3",
        "Operating System :: OS Independent",
        "Natural Language :: English",
        "Topic :: Scientific/Engineering :: Mathematics",
        "License :: OSI Approved :: GNU General Public License v3 (GPLv3)",
    ],
)
