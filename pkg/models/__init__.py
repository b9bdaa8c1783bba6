from .campaign_run import CampaignRun
