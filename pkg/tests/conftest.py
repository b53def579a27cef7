def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-depth pipeline runs and large sweeps")
