"""
Published scenarios.

Each subpackage holds Scenario subclasses for one kind of study.

Structure:
    scenarios/
    ├── one_sample/     # trimmed mean and variance of one law
    │   ├── symmetric.py
    │   └── skewed.py
    └── two_sample/     # variance ratio and mean difference of two laws
        ├── symmetric.py
        └── skewed.py
"""
