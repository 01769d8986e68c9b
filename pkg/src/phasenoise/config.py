import logging


class Config(dict):
    def __init__(self, **kwargs):
        self.update(**kwargs)
        self.defined_variables = {}
        self.snapshots = []

    def define(self, name, description, default=None):
        """
        used to define variables and set their default so that we can then
        provide the info using the `phasenoise vars` command for users to know
        which knobs exist and what they default to.

        parameters:
            name(string): the name of the variable
            description(string): a succinct description of variables purpose
            default(object): an optional default to set the variable to
        """
        self.defined_variables[name] = {
            "description": description,
            "default": default,
        }
        # set the default
        self.__setitem__(name, default)

    def __getitem__(self, key):
        try:
            return dict.__getitem__(self, key)
        except KeyError:
            return None

    def get(self, key, default=None):
        value = self[key]
        return default if value is None else value

    def update(self, **kwargs):
        for k, v in kwargs.items():
            self[k] = v

    def float(self, key):
        return float(self[key])

    def int(self, key):
        return int(self[key])

    def snapshot(self, name=None):
        if name is None:
            name = f"snapshot_{len(self.snapshots)}"

        snapshot_data = {"name": name, "config": self.copy()}
        self.snapshots.append(snapshot_data)

        logging.getLogger("phasenoise").debug(
            f"CONFIG: snapshot taken '{name}' (stack depth: {len(self.snapshots)})"
        )

    def restore(self, with_pop=False):
        if not self.snapshots:
            return

        if with_pop:
            latest_snapshot = self.snapshots.pop()
            action = "popped and restored"
        else:
            latest_snapshot = self.snapshots[-1]
            action = "restored to"

        self.clear()
        dict.update(self, latest_snapshot["config"])

        logging.getLogger("phasenoise").debug(
            f"CONFIG: {action} snapshot '{latest_snapshot['name']}' (stack depth: {len(self.snapshots)})"
        )

    def list_snapshots(self):
        return [snapshot["name"] for snapshot in self.snapshots]


# global config object
CONFIG = Config()


CONFIG.define(
    "PHASENOISE_TAIL_TOL",
    "discarded Poisson tail probability allowed when truncating coherent states",
    default=1e-14,
)
CONFIG.define(
    "PHASENOISE_MAX_DIM",
    "largest Fock dimension a coherent state may be expanded to",
    default=4096,
)
CONFIG.define(
    "PHASENOISE_PRECISION",
    "significant digits used when rendering floats in JSON and CSV output",
    default=17,
)
CONFIG.define(
    "PHASENOISE_SEED",
    "master seed for random state and ensemble generation",
    default=0,
)
CONFIG.define(
    "PHASENOISE_WORKERS",
    "number of worker processes used by sweeps and Monte Carlo runs",
    default=1,
)
CONFIG.define(
    "PHASENOISE_EXTREMAL_TOL",
    "relative tolerance on the mean photon number in the extremal search",
    default=1e-10,
)
CONFIG.define(
    "PHASENOISE_EXTREMAL_MAX_DIM",
    "largest number of Fock levels the extremal search accepts",
    default=65536,
)
CONFIG.define(
    "PHASENOISE_EXTREMAL_MAX_BISECTIONS",
    "maximum number of multiplier bisections in the extremal search",
    default=200,
)
CONFIG.define(
    "PHASENOISE_MC_MAX_COMPONENTS",
    "default largest number of coherent components in a random ensemble",
    default=32,
)
CONFIG.define(
    "PHASENOISE_MC_MAX_ALPHA",
    "default radius of the disk random coherent amplitudes are drawn from",
    default=10.0,
)

# test-only hook: sign of the <P0>/2 term in the variance sum identity check
CONFIG["__PHASENOISE_VARIANCE_SUM_P0_SIGN"] = 1
