import pytest_check as check

from phasenoise.config import CONFIG, Config


def test_config_lookup_for_inexistent_is_none():
    assert CONFIG["INEXISTENT"] is None


def test_config_get_falls_back_to_default():
    check.equal(CONFIG.get("INEXISTENT", 3), 3)
    check.equal(CONFIG.get("PHASENOISE_PRECISION", 3), 17)


def test_config_defaults():
    check.equal(CONFIG.float("PHASENOISE_TAIL_TOL"), 1e-14)
    check.equal(CONFIG.int("PHASENOISE_MAX_DIM"), 4096)
    check.equal(CONFIG.int("PHASENOISE_PRECISION"), 17)
    check.equal(CONFIG.int("PHASENOISE_SEED"), 0)
    check.equal(CONFIG.int("PHASENOISE_WORKERS"), 1)
    check.equal(CONFIG.float("PHASENOISE_EXTREMAL_TOL"), 1e-10)
    check.equal(CONFIG.int("PHASENOISE_EXTREMAL_MAX_BISECTIONS"), 200)
    check.equal(CONFIG.int("PHASENOISE_EXTREMAL_MAX_DIM"), 65536)
    check.equal(CONFIG.int("PHASENOISE_MC_MAX_COMPONENTS"), 32)
    check.equal(CONFIG.float("PHASENOISE_MC_MAX_ALPHA"), 10.0)
    check.equal(CONFIG["__PHASENOISE_VARIANCE_SUM_P0_SIGN"], 1)


def test_config_validate_defined_variables():
    for name, definition in CONFIG.defined_variables.items():
        check.is_true(name.startswith("PHASENOISE_"), name)
        check.is_true(definition["description"], name)
        check.equal(CONFIG[name], definition["default"], name)


def test_config_define_sets_default():
    config = Config()
    config.define("FOO", "a knob", default=4)

    check.equal(config["FOO"], 4)
    check.equal(
        config.defined_variables["FOO"],
        {"description": "a knob", "default": 4},
    )


def test_config_typed_lookups_convert():
    config = Config()
    config["A"] = "2.5"
    config["B"] = "7"

    check.equal(config.float("A"), 2.5)
    check.equal(config.int("B"), 7)


def test_config_push_and_pop_works():
    CONFIG["FOO"] = None
    CONFIG.snapshot()
    CONFIG["FOO"] = "bar"
    assert CONFIG["FOO"] == "bar"
    CONFIG.restore(with_pop=True)
    assert CONFIG["FOO"] is None


def test_config_push_pop_stack_behavior():
    config = Config()
    config["key1"] = "value1"
    config["key2"] = "value2"

    # Take first snapshot
    config.snapshot("first")
    config["key2"] = "modified"
    config["key3"] = "value3"

    # Take second snapshot
    config.snapshot("second")
    config["key1"] = "again_modified"

    assert len(config.snapshots) == 2

    # Pop should restore to second snapshot
    config.restore(with_pop=True)
    assert config["key1"] == "value1"
    assert config["key2"] == "modified"
    assert config["key3"] == "value3"
    assert len(config.snapshots) == 1

    # Pop again should restore to first snapshot
    config.restore(with_pop=True)
    assert config["key1"] == "value1"
    assert config["key2"] == "value2"
    assert "key3" not in config
    assert len(config.snapshots) == 0


def test_config_restore_functionality():
    # restore goes back to the top of the stack without popping it
    CONFIG["TEST"] = "initial"
    CONFIG.snapshot()

    CONFIG["TEST"] = "modified"
    assert CONFIG["TEST"] == "modified"

    CONFIG.restore()
    assert CONFIG["TEST"] == "initial"

    CONFIG["TEST"] = "modified_again"
    CONFIG.restore(with_pop=True)
    assert CONFIG["TEST"] == "initial"


def test_config_restore_keeps_defined_variables():
    CONFIG.snapshot()
    CONFIG["PHASENOISE_MAX_DIM"] = 8
    CONFIG.restore(with_pop=True)

    check.equal(CONFIG.int("PHASENOISE_MAX_DIM"), 4096)
    check.is_in("PHASENOISE_MAX_DIM", CONFIG.defined_variables)


def test_config_empty_snapshots_list():
    config = Config()

    names = config.list_snapshots()
    assert names == []

    # restore and pop should handle empty snapshots gracefully
    config.restore()
    config.restore(with_pop=True)


def test_config_named_snapshots():
    config = Config()
    config["key1"] = "value1"

    config.snapshot("first_snapshot")
    config["key2"] = "value2"

    config.snapshot("second_snapshot")
    config["key3"] = "value3"

    names = config.list_snapshots()
    assert names == ["first_snapshot", "second_snapshot"]

    config.restore(with_pop=True)
    assert "key3" not in config
    assert config["key2"] == "value2"

    names = config.list_snapshots()
    assert names == ["first_snapshot"]


def test_config_auto_generated_snapshot_names():
    config = Config()
    config["key1"] = "value1"

    config.snapshot()  # should be snapshot_0
    config.snapshot()  # should be snapshot_1

    names = config.list_snapshots()
    assert names == ["snapshot_0", "snapshot_1"]
