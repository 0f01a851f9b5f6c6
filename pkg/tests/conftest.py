from hypothesis import HealthCheck, settings

## borderline margins occasionally escalate into mpmath, which makes a
## single example slow without being a bug; deadlines stay off
settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")
