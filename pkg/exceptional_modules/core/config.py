from pydantic_settings import BaseSettings
from typing import Optional


class Settings(BaseSettings):
    # 应用基础配置
    app_name: str = "Exceptional Modules"
    app_version: str = "1.0.0"
    debug: bool = False

    # 日志配置
    log_level: str = "INFO"
    log_file: Optional[str] = None

    # verify-suite 并发线程数 (EXMOD_WORKERS)
    workers: int = 4

    # Kronecker 构造的 δ 模型认证上限 (dim C⁰)
    kronecker_certify_max_dim: int = 600

    # 正交对搜索配置
    pair_search_max_total_dim: int = 24
    suite_rank_one_max_n: int = 2

    class Config:
        env_file = ".env"
        env_prefix = "EXMOD_"
        case_sensitive = False


# 创建全局配置实例
settings = Settings()
