# Copyright (c) 2024, the gemkit authors
#
# All rights reserved.
#
# See the file "LICENCE" for information about the copyright
# and warranty status of this software.

'''Class for handling environment configuration and defaults.'''


from gemkit.lib.env_base import EnvBase


def _seconds(value):
    seconds = float(value)
    if seconds <= 0:
        raise ValueError(seconds)
    return seconds


class Env(EnvBase):
    '''Wraps environment configuration.  Keyword overrides, typically from
    command-line flags, take precedence over the environment.'''

    def __init__(self, **overrides):
        super().__init__()
        self.obsolete(['GENUS_WORKERS'])

        # Simplification

        self.simplify_budget = self.positive('SIMPLIFY_BUDGET', 10_000)
        self.simplify_time_limit = self.custom('SIMPLIFY_TIME_LIMIT', 60.0, _seconds)
        self.simplify_seed = self.integer('SIMPLIFY_SEED', None)
        self.simplify_restarts = self.positive('SIMPLIFY_RESTARTS', 1)

        # Certification and planning

        self.certify_budget = self.positive('CERTIFY_BUDGET', 100_000)
        self.plan_budget = self.positive('PLAN_BUDGET', 100_000)

        for name, value in overrides.items():
            if not hasattr(self, name):
                raise self.Error(f'unknown setting {name}')
            if value is not None:
                setattr(self, name, value)
