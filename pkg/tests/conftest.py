import os

from hypothesis import settings

# bignum examples at n=40 are slow to shrink on a cold interpreter
settings.register_profile('default', deadline=None)
settings.register_profile('ci', deadline=None, max_examples=300)
settings.load_profile(os.getenv('HYPOTHESIS_PROFILE', 'default'))
