from .crud_campaign_run import crud_campaign_run
