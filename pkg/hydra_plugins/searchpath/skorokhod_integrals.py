# https://github.com/facebookresearch/hydra/tree/main/examples/plugins/example_searchpath_plugin
# https://hydra.cc/docs/advanced/search_path/

from hydra.core.config_search_path import ConfigSearchPath
from hydra.plugins.search_path_plugin import SearchPathPlugin


class SkorokhodIntegralsSearchPathPlugin(SearchPathPlugin):  # noqa: D101
    def manipulate_search_path(self, search_path: ConfigSearchPath) -> None:  # noqa: D102
        # Appends the package configs to the end of the search path, so that other projects can
        # compose `scenario`, `metric` or `construction` groups without declaring the search path
        search_path.append(
            provider="skorokhod_integrals-searchpath-plugin",
            path="pkg://skorokhod_integrals.configs",
        )
