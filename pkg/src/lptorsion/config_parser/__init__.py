from ._merge_configs import merge_configs
from ._domain_parser import (
    BALL_CLUSTER,
    DEFAULT_CORPUS,
    create_domain_schema,
    parse_domains,
    load_default_corpus,
    write_domains,
)
from ._run_config import (
    DEFAULT_LISTS,
    create_run_schema,
    parse_run_config,
    numeric_settings,
    inline_domain,
)
