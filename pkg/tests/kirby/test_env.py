# Tests of kirby/env.py

import os

import pytest

from gemkit.kirby.env import Env


@pytest.fixture(autouse=True)
def saved_environ():
    saved = dict(os.environ)
    yield
    os.environ.clear()
    os.environ.update(saved)


def setup_base_env():
    os.environ.clear()


def assert_positive(env_var, attr, default):
    setup_base_env()
    assert getattr(Env(), attr) == default
    os.environ[env_var] = '250'
    assert getattr(Env(), attr) == 250
    for bad in ('0', '-3', '2.5'):
        os.environ[env_var] = bad
        with pytest.raises(Env.Error):
            Env()


def test_minimal():
    setup_base_env()
    e = Env()
    assert e.log_level == 'INFO'
    assert e.simplify_seed is None
    assert e.simplify_restarts == 1


def test_SIMPLIFY_BUDGET():
    assert_positive('SIMPLIFY_BUDGET', 'simplify_budget', 10_000)


def test_CERTIFY_BUDGET():
    assert_positive('CERTIFY_BUDGET', 'certify_budget', 100_000)


def test_PLAN_BUDGET():
    assert_positive('PLAN_BUDGET', 'plan_budget', 100_000)


def test_SIMPLIFY_RESTARTS():
    assert_positive('SIMPLIFY_RESTARTS', 'simplify_restarts', 1)


def test_SIMPLIFY_TIME_LIMIT():
    setup_base_env()
    assert Env().simplify_time_limit == 60.0
    os.environ['SIMPLIFY_TIME_LIMIT'] = '2.5'
    assert Env().simplify_time_limit == 2.5
    os.environ['SIMPLIFY_TIME_LIMIT'] = '0'
    with pytest.raises(Env.Error):
        Env()


def test_SIMPLIFY_SEED():
    setup_base_env()
    os.environ['SIMPLIFY_SEED'] = '-7'
    assert Env().simplify_seed == -7


def test_LOG_LEVEL():
    setup_base_env()
    os.environ['LOG_LEVEL'] = 'debug'
    assert Env().log_level == 'DEBUG'


def test_overrides():
    setup_base_env()
    os.environ['SIMPLIFY_BUDGET'] = '5'
    assert Env(simplify_budget=7).simplify_budget == 7
    assert Env(simplify_budget=None).simplify_budget == 5
    with pytest.raises(Env.Error):
        Env(no_such_setting=1)


def test_obsolete():
    setup_base_env()
    os.environ['GENUS_WORKERS'] = '4'
    with pytest.raises(Env.Error):
        Env()
