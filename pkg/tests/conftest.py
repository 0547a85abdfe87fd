"""Shared fixtures: fixture databases and golden-set paths."""

from __future__ import annotations

from pathlib import Path

import pytest

from nl2chart.catalog import load_database

DATA_DIR = Path(__file__).parent / "data"
DATABASES_DIR = DATA_DIR / "databases"
GOLDEN_DIR = DATA_DIR / "golden"


@pytest.fixture(scope="session")
def databases_dir() -> Path:
    return DATABASES_DIR


@pytest.fixture(scope="session")
def golden_dir() -> Path:
    return GOLDEN_DIR


@pytest.fixture(scope="session")
def dorm_catalog():
    return load_database(DATABASES_DIR / "dorm_1")


@pytest.fixture(scope="session")
def documents_catalog():
    return load_database(DATABASES_DIR / "cre_Doc_Tracking_DB")


@pytest.fixture(scope="session")
def retail_catalog():
    return load_database(DATABASES_DIR / "retail_orders")


@pytest.fixture(scope="session")
def university_catalog():
    return load_database(DATABASES_DIR / "university_course")


@pytest.fixture(scope="session")
def complaints_catalog():
    return load_database(DATABASES_DIR / "product_complaints")


@pytest.fixture(scope="session")
def basketball_catalog():
    return load_database(DATABASES_DIR / "basketball")
