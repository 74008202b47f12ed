from .types import MaximizerReport, MaximizerSearch, SearchOptions
from .bounds import bound_is_extension, classical_multi_information_bound, support_bound
from .exp_form import check_exponential_form
from .search import local_max_search, search_maximizers

__all__ = [
    "MaximizerReport",
    "MaximizerSearch",
    "SearchOptions",
    "bound_is_extension",
    "check_exponential_form",
    "classical_multi_information_bound",
    "local_max_search",
    "search_maximizers",
    "support_bound",
]
